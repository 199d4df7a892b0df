//! Fixtures and independent oracles for validating secpath.
