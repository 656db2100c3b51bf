use congruence_core::dl::{s_lambda_points, WittType, GUARD_ENV};
use congruence_core::Error;

// Kept in its own test binary because it sets a process-wide variable.
#[test]
fn guard_refuses_large_enumerations() {
    std::env::set_var(GUARD_ENV, "10");
    let err = s_lambda_points(4, WittType::Split, 3, 2).unwrap_err();
    assert!(matches!(err, Error::GuardExceeded { guard: 10, .. }), "{err:?}");
}
