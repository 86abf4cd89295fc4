//! Case-study scenarios.
