"""Bundled fixture data files (CSV seasons + expected-value sidecars)."""
