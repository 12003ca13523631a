"""
Registry of every catalogued bound.

Each entry couples a :class:`BoundDescriptor` with the name of its default
grid in :data:`DEFAULT_GRIDS`. Ids are dotted: ``<family>.<function>.<name>``,
e.g. ``pcf.b03``, ``bessel.I.table1.(2,1)``, ``confluent.lambda``.
Parametric Bessel families are registered once per lambda on an evenly spaced
grid with both end points, e.g. ``bessel.I.lower[lam=0.25]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from ..bounds import bessel, confluent, gauss, pcf
from ..core.config import Config
from ..core.errors import ConfigError
from ..core.grid import DEFAULT_GRIDS, Grid, lambda_grid
from ..core.types import BoundDescriptor, Params, RatioKind, Side


@dataclass(frozen=True)
class CatalogEntry:
    descriptor: BoundDescriptor
    grid_name: str

    @property
    def id(self) -> str:
        return self.descriptor.id

    @property
    def family(self) -> str:
        return self.descriptor.family

    def default_grid(self) -> Grid:
        return DEFAULT_GRIDS[self.grid_name]()


class BoundCatalog:
    """Lookup of catalogued bounds by id or family."""

    def __init__(self, entries: Iterable[CatalogEntry]):
        self._entries: Dict[str, CatalogEntry] = {}
        for entry in entries:
            if entry.id in self._entries:
                raise ConfigError(f"duplicate bound id {entry.id!r}")
            self._entries[entry.id] = entry

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, bound_id: str) -> bool:
        return bound_id in self._entries

    def ids(self) -> List[str]:
        return list(self._entries)

    def get(self, bound_id: str) -> CatalogEntry:
        try:
            return self._entries[bound_id]
        except KeyError:
            raise ConfigError(f"unknown bound id {bound_id!r}") from None

    def by_family(self, family: str) -> List[CatalogEntry]:
        if family not in Config.FAMILIES:
            raise ConfigError(f"unknown family {family!r}; choose from {', '.join(Config.FAMILIES)}")
        return [e for e in self._entries.values() if e.family == family]

    def select(self, family: Optional[str] = None, bound_ids: Optional[Iterable[str]] = None) -> List[CatalogEntry]:
        """Entries matching the filters; unknown ids or families raise ConfigError."""
        if bound_ids:
            chosen = [self.get(bound_id) for bound_id in bound_ids]
            if family is not None:
                self.by_family(family)
                chosen = [e for e in chosen if e.family == family]
            return chosen
        if family is not None:
            return self.by_family(family)
        return list(self._entries.values())

    def certified(self) -> List[CatalogEntry]:
        """Entries whose accuracy tag takes part in certification."""
        return [e for e in self._entries.values() if e.descriptor.accuracy is not None and e.descriptor.certify]


# --- registration helpers ------------------------------------------------------
def _always(_params: Params) -> bool:
    return True


def _entry(bound_id: str, family: str, kind: RatioKind, side: Side,
           evaluate: Callable[[Params, float], float], grid_name: str,
           validity: Callable[[Params], bool] = _always,
           accuracy: Optional[Tuple[int, int]] = None, provenance: str = "",
           strict: bool = True, certify: bool = True,
           orientation: Optional[Callable[[Params], Side]] = None,
           gap_powers_at_zero: Optional[Tuple[int, ...]] = None) -> CatalogEntry:
    descriptor = BoundDescriptor(
        id=bound_id, family=family, kind=kind, side=side, evaluate=evaluate,
        validity=validity, accuracy=accuracy, provenance=provenance, strict=strict,
        certify=certify and accuracy is not None, orientation=orientation,
        gap_powers_at_zero=gap_powers_at_zero,
    )
    return CatalogEntry(descriptor, grid_name)


def _pcf_entries() -> List[CatalogEntry]:
    def one(name, fn, side, minimum, accuracy, provenance, certify=True):
        return _entry(f"pcf.{name}", "pcf", RatioKind.PCF, side, lambda p, x: float(fn(p[0], x)), "pcf",
                      validity=lambda p: p[0] > minimum, accuracy=accuracy, provenance=provenance,
                      certify=certify)

    return [
        one("b21", pcf.b21, Side.LOWER, 0.5, (2, 1), "nullcline of the Riccati equation for Phi_n"),
        one("b12", pcf.b12, Side.UPPER, -0.5, (1, 2), "nullcline at n+1 lifted one step backward"),
        one("b30", pcf.b30, Side.UPPER, 1.5, (3, 0), "nullcline at n-1 lifted one step forward"),
        one("b03", pcf.b03, Side.LOWER, -0.5, (0, 3), "residual-sign certified lower bound"),
        one("b40", pcf.b40, Side.LOWER, 2.5, (4, 0), "two forward lifts of the nullcline"),
        one("trig33", pcf.trig33, Side.LOWER, 0.5, (3, 3), "largest root of the double-ratio cubic"),
        one("alg33", pcf.alg33, Side.LOWER, 0.5, (3, 3), "algebraic minorant of trig33", certify=False),
        one("b24", pcf.b24, Side.UPPER, -0.5, (2, 4), "backward lift of trig33", certify=False),
        one("b42", pcf.b42, Side.UPPER, 1.5, (4, 2), "forward lift of trig33", certify=False),
    ]


def _lambda_label(lam: float) -> str:
    return f"{lam:.4g}"


def _bessel_family_entries() -> List[CatalogEntry]:
    entries = []
    count = Config.LAMBDA_GRID_SIZE
    for lam in lambda_grid(*bessel.LOWER_LAMBDA_RANGE, count):
        label = _lambda_label(lam)
        entries.append(_entry(
            f"bessel.I.lower[lam={label}]", "bessel", RatioKind.BESSEL_I, Side.LOWER,
            lambda p, x, lam=lam: float(bessel.lower_I(lam, p[0], x)), "bessel",
            validity=lambda p, lam=lam: p[0] >= 0.5 - lam,
            provenance=f"lower family for I_(nu-1)/I_nu at lambda={label}",
        ))
        entries.append(_entry(
            f"bessel.K.upper[lam={label}]", "bessel", RatioKind.BESSEL_K, Side.UPPER,
            lambda p, x, lam=lam: float(bessel.upper_K(lam, p[0], x)), "bessel",
            validity=lambda p, lam=lam: p[0] >= 0.5 - lam,
            provenance=f"upper family for K_(nu+1)/K_nu at lambda={label}",
        ))
    for lam in lambda_grid(*bessel.UPPER_LAMBDA_RANGE, count):
        label = _lambda_label(lam)
        entries.append(_entry(
            f"bessel.I.upper[lam={label}]", "bessel", RatioKind.BESSEL_I, Side.UPPER,
            lambda p, x, lam=lam: float(bessel.upper_I(lam, p[0], x)), "bessel",
            validity=lambda p: p[0] >= 0.0,
            provenance=f"upper family for I_(nu-1)/I_nu at lambda={label}",
        ))
        entries.append(_entry(
            f"bessel.K.lower[lam={label}]", "bessel", RatioKind.BESSEL_K, Side.LOWER,
            lambda p, x, lam=lam: float(bessel.lower_K(lam, p[0], x)), "bessel",
            validity=lambda p, lam=lam: p[0] >= lam,
            provenance=f"lower family for K_(nu+1)/K_nu at lambda={label}",
        ))
    return entries


def _bessel_entries() -> List[CatalogEntry]:
    entries = _bessel_family_entries()
    for row_id, row in bessel.TABLE1_ROWS.items():
        kind = RatioKind.BESSEL_I if row.function == "I" else RatioKind.BESSEL_K
        side = Side.LOWER if row.side == "lower" else Side.UPPER
        entries.append(_entry(
            f"bessel.{row.function}.table1.{row_id[1:]}", "bessel", kind, side,
            lambda p, x, row_id=row_id: float(bessel.table1_bound(row_id, p[0], x)), "bessel",
            validity=lambda p, row=row: row.nu_valid(p[0]), accuracy=row.tag,
            provenance=f"classified bound, family member at lambda={row.family_lambda:g}",
        ))

    def gap(index: int):
        return lambda p, x: float(bessel.gapk_bounds(p[0], x)[index] / x)

    half_or_more = lambda p: p[0] >= 0.5  # noqa: E731
    entries += [
        _entry("bessel.I.gapk.lower", "bessel", RatioKind.BESSEL_I, Side.LOWER, gap(0), "bessel",
               validity=half_or_more, provenance="gap bound on x I_(nu-1)/I_nu"),
        _entry("bessel.I.gapk.upper", "bessel", RatioKind.BESSEL_I, Side.UPPER, gap(1), "bessel",
               validity=half_or_more, provenance="gap bound on x I_(nu-1)/I_nu"),
        _entry("bessel.K.gapk.lower", "bessel", RatioKind.BESSEL_K, Side.LOWER, gap(0), "bessel",
               validity=half_or_more, provenance="gap bound on x K_(nu+1)/K_nu"),
        # attained at nu = 1/2, where x K_(3/2)/K_(1/2) = x + 1
        _entry("bessel.K.gapk.upper", "bessel", RatioKind.BESSEL_K, Side.UPPER, gap(1), "bessel",
               validity=half_or_more, strict=False, provenance="gap bound on x K_(nu+1)/K_nu"),
        _entry("bessel.I.bound23", "bessel", RatioKind.BESSEL_I, Side.UPPER,
               lambda p, x: float(bessel.i_bound_23(p[0], x)), "bessel",
               validity=lambda p: p[0] > 0.0, accuracy=(2, 3),
               provenance="backward lift of the gap lower bound"),
        _entry("bessel.I.iterated.B0", "bessel", RatioKind.BESSEL_I, Side.LOWER,
               lambda p, x: float(bessel.iterated_riccati_bound(0, p[0], x)), "bessel",
               validity=half_or_more, accuracy=(1, 3), provenance="iterated Riccati bound, alpha=0"),
        _entry("bessel.I.iterated.B2", "bessel", RatioKind.BESSEL_I, Side.UPPER,
               lambda p, x: float(bessel.iterated_riccati_bound(2, p[0], x)), "bessel",
               validity=lambda p: p[0] >= 0.0, accuracy=(1, 2), provenance="iterated Riccati bound, alpha=2"),
        _entry("bessel.I.trig", "bessel", RatioKind.BESSEL_I, Side.UPPER,
               lambda p, x: float(bessel.trig_upper_I(p[0], x)), "bessel",
               validity=lambda p: p[0] >= 0.0, accuracy=(3, 2),
               # the tag's count at 0 runs one ahead of the gap, which decays like x^3
               gap_powers_at_zero=(3,),
               provenance="largest root of the Bessel double-ratio cubic"),
        _entry("bessel.Kdown.trig", "bessel", RatioKind.BESSEL_K_DOWN, Side.UPPER,
               lambda p, x: float(bessel.trig_upper_Kratio(p[0], x)), "bessel",
               validity=lambda p: p[0] >= 0.0, provenance="smallest root of the Bessel double-ratio cubic"),
        _entry("bessel.product.trig", "bessel", RatioKind.BESSEL_IK_PRODUCT, Side.LOWER,
               lambda p, x: float(bessel.product_bounds(p[0], x)[0]), "bessel_product",
               validity=lambda p: p[0] >= 0.0, provenance="product identity with both trigonometric bounds"),
        _entry("bessel.product.alg", "bessel", RatioKind.BESSEL_IK_PRODUCT, Side.LOWER,
               lambda p, x: float(bessel.product_bounds(p[0], x)[1]), "bessel_product",
               validity=lambda p: p[0] >= 0.0, provenance="algebraic minorant of the product bound"),
        _entry("bessel.I.eta02", "bessel", RatioKind.BESSEL_I, Side.LOWER,
               lambda p, x: float(bessel.i_lower_02(p[0], x)), "bessel",
               validity=half_or_more, accuracy=(0, 2), provenance="Bessel case of the Kummer eta bound"),
        _entry("bessel.I.eta11", "bessel", RatioKind.BESSEL_I, Side.UPPER,
               lambda p, x: float(bessel.i_upper_11(p[0], x)), "bessel",
               validity=half_or_more, accuracy=(1, 1), provenance="Bessel case of the Kummer eta_tilde bound"),
    ]
    return entries


def _side_of_lambda(params: Params) -> Side:
    return confluent.side_of_lambda(params[0], params[1])


def _side_of_tilde(params: Params) -> Side:
    return _side_of_lambda(params).flipped()


def _fixed_unless_equal(side: Side) -> Callable[[Params], Side]:
    return lambda p: Side.EQUAL if p[0] == p[1] else side


def _confluent_entries() -> List[CatalogEntry]:
    positive = lambda p: p[0] > 0.0 and p[1] > 0.0  # noqa: E731
    return [
        _entry("confluent.lambda", "confluent", RatioKind.KUMMER_AB1B1, Side.UPPER,
               lambda p, x: float(confluent.lambda_kummer(p[0], p[1], x)), "confluent",
               validity=positive, accuracy=(1, 2), orientation=_side_of_lambda,
               provenance="nullcline of the Kummer Riccati equation; upper when b > a"),
        _entry("confluent.lambda_tilde", "confluent", RatioKind.KUMMER_AB1B1, Side.LOWER,
               lambda p, x: float(confluent.lambda_tilde(p[0], p[1], x)), "confluent",
               validity=positive, accuracy=(2, 1), orientation=_side_of_tilde,
               provenance="nullcline at (a+1, b+1) lifted through the recurrence"),
        _entry("confluent.b03", "confluent", RatioKind.KUMMER_AB1B1, Side.LOWER,
               lambda p, x: float(confluent.b03_confluent(p[0], p[1], x)), "confluent",
               validity=lambda p: p[0] > 1.0 and p[1] > 1.0, accuracy=(0, 3), orientation=_side_of_tilde,
               provenance="nullcline at (a-1, b-1), residual-sign certified"),
        _entry("confluent.a1b.lower", "confluent", RatioKind.KUMMER_A1B, Side.LOWER,
               lambda p, x: float(confluent.ratio_a1b_bounds(p[0], p[1], x)[0]), "confluent",
               validity=positive, orientation=_fixed_unless_equal(Side.LOWER),
               provenance="affine transport of the AB1B1 pair"),
        _entry("confluent.a1b.upper", "confluent", RatioKind.KUMMER_A1B, Side.UPPER,
               lambda p, x: float(confluent.ratio_a1b_bounds(p[0], p[1], x)[1]), "confluent",
               validity=positive, orientation=_fixed_unless_equal(Side.UPPER),
               provenance="affine transport of the AB1B1 pair"),
        _entry("confluent.eta", "confluent", RatioKind.KUMMER_A1B2, Side.UPPER,
               lambda p, x: float(confluent.eta(p[0], p[1], x)), "confluent",
               validity=positive, accuracy=(0, 2), provenance="transport of lambda to m(a+1,b+2)/m(a,b)"),
        _entry("confluent.eta_tilde", "confluent", RatioKind.KUMMER_A1B2, Side.LOWER,
               lambda p, x: float(confluent.eta_tilde(p[0], p[1], x)), "confluent",
               validity=positive, accuracy=(1, 1), provenance="transport of lambda_tilde to m(a+1,b+2)/m(a,b)"),
        _entry("confluent.ku.lower", "confluent", RatioKind.KUMMER_H, Side.LOWER,
               lambda p, x: float(confluent.ku_bounds(p[0], p[1], x)[0]), "confluent",
               validity=positive, orientation=_fixed_unless_equal(Side.LOWER),
               provenance="lambda pair in M normalisation"),
        _entry("confluent.ku.upper", "confluent", RatioKind.KUMMER_H, Side.UPPER,
               lambda p, x: float(confluent.ku_bounds(p[0], p[1], x)[1]), "confluent",
               validity=positive, orientation=_fixed_unless_equal(Side.UPPER),
               provenance="lambda pair in M normalisation"),
    ]


def _gauss_flags(p: Params) -> gauss.GaussRatioParams:
    return gauss.GaussRatioParams(*p)


def _gauss_entries() -> List[CatalogEntry]:
    return [
        _entry("gauss.lambda", "gauss", RatioKind.GAUSS, Side.UPPER,
               lambda p, x: float(gauss.lambda_gauss(p[0], p[1], p[2], x)), "gauss",
               validity=lambda p: _gauss_flags(p).monotone,
               provenance="nullcline of the Gauss Riccati equation"),
        _entry("gauss.lower_H", "gauss", RatioKind.GAUSS_H, Side.LOWER,
               lambda p, x: float(gauss.lower_H(p[0], p[1], p[2], x)), "gauss",
               validity=lambda p: _gauss_flags(p).monotone, provenance="lower bound of H"),
        _entry("gauss.upper_H", "gauss", RatioKind.GAUSS_H, Side.UPPER,
               lambda p, x: float(gauss.upper_H(p[0], p[1], p[2], x)), "gauss",
               validity=lambda p: _gauss_flags(p).extended, provenance="upper bound of H"),
    ]


@lru_cache(maxsize=1)
def get_catalog() -> BoundCatalog:
    """The full catalog; built once per process."""
    return BoundCatalog(_pcf_entries() + _bessel_entries() + _confluent_entries() + _gauss_entries())
