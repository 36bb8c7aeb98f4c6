#![no_main]
use libfuzzer_sys::fuzz_target;
use qubitloss::format::parse_state_bytes;
use qubitloss::{all_projections, detect, Tolerance, VerdictKind};

// Parsed states go through the detector; small registers keep runs fast.
fuzz_target!(|data: &[u8]| {
    let Ok(state) = parse_state_bytes(data) else {
        return;
    };
    let n = state.num_qubits();
    if n < 2 || n > 8 || state.is_zero() {
        return;
    }
    let tol = Tolerance::default();
    if let Ok(verdict) = detect(&state, tol) {
        if let (VerdictKind::CertifiedGenuine, Some(cert)) = (verdict.kind, &verdict.certificate) {
            assert!(cert.replay(&state, tol).unwrap());
        }
    }
    let _ = all_projections(&state);
});
