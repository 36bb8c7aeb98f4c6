#![no_main]
use libfuzzer_sys::fuzz_target;
use qubitloss::format::{parse_json, write_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(state) = parse_json(text) {
        let again = parse_json(&write_json(&state)).expect("written state parses");
        assert_eq!(again, state);
    }
});
