"""Core types, enclosure arithmetic, configuration and the run pipeline."""
