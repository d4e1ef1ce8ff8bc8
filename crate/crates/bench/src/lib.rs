//! Benchmark inputs shared by the criterion benches.

pub const MODEL: &str = "(y^4+x^3)^6+x^17*y^3";

/// Weight sequences whose generated curves have degree 8, 16 and 32.
pub const GENERATED: [&[u32]; 3] = [&[2, 4], &[2, 2, 4], &[2, 4, 4]];
