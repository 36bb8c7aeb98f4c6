#![no_main]
use libfuzzer_sys::fuzz_target;
use qubitloss::format::parse_qubit_list;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(list) = parse_qubit_list(text) {
            assert!(!list.is_empty() && list.iter().all(|&q| q > 0));
        }
    }
});
