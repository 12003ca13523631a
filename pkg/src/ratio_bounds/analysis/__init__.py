"""Verification, property suites, accuracy certification and explorations built on the oracles."""
