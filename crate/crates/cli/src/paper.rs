//! Published reference values used by `--check`.

/// Observed orders for θ = 0, 0.5, 1 (columns) and K = 1..6 (rows).
pub const TABLE2_ORDERS: [[f64; 3]; 6] = [
    [0.8348, 1.9804, 1.2583],
    [2.0603, 1.9970, 1.9319],
    [2.9458, 4.0142, 3.0477],
    [3.7102, 4.0041, 4.2008],
    [4.9576, 5.9965, 5.0311],
    [5.8559, 6.0821, 6.2854],
];

/// `(t_f, K, steps, max error)` for the adaptive central scheme at tol = 1e-10.
pub const TABLE3: [(f64, usize, usize, f64); 6] = [
    (1.0, 3, 51, 7.93e-11),
    (1.0, 5, 9, 2.38e-10),
    (2.0, 3, 92, 4.62e-9),
    (2.0, 5, 16, 8.45e-9),
    (4.0, 3, 152, 1.01e-5),
    (4.0, 5, 27, 1.49e-5),
];

/// `log₂(1/Δt)` and the maximum errors for K = 3, 4, 5.
pub const TABLE4: [(i32, [f64; 3]); 4] = [
    (5, [2.69e-10, 4.89e-11, 3.89e-13]),
    (6, [4.97e-11, 5.86e-12, 3.79e-13]),
    (7, [4.97e-12, 5.94e-13, 1.33e-15]),
    (8, [4.76e-13, 5.62e-14, 8.88e-16]),
];

/// `(ε, T)` and step counts for K = 3, 5, 7, 9.
pub const TABLE5: [(f64, f64, [usize; 4]); 4] = [
    (0.1, 1.0, [1788, 254, 95, 53]),
    (1.0, 10.0, [3827, 520, 193, 108]),
    (10.0, 100.0, [45607, 5339, 1888, 1068]),
    (100.0, 1000.0, [173179, 19012, 15282, 10820]),
];

pub const TABLE5_ORDERS: [usize; 4] = [3, 5, 7, 9];

/// Step counts are accepted within this factor either way.
pub const STEP_FACTOR: f64 = 2.0;
/// Errors are accepted up to this multiple of the published value.
pub const ERROR_FACTOR: f64 = 10.0;
/// Errors below this are round-off and always accepted.
pub const ROUND_OFF_FLOOR: f64 = 1e-12;
/// Allowed deviation of an observed order from the theoretical one.
pub const ORDER_SLACK: f64 = 0.5;
/// Largest accepted max/min ratio of SEIR step counts over η.
pub const SEIR_RATIO: f64 = 1.5;
