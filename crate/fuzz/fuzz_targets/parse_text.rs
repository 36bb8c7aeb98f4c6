#![no_main]
use libfuzzer_sys::fuzz_target;
use qubitloss::format::{parse_text, write_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(state) = parse_text(text) {
        let again = parse_text(&write_text(&state)).expect("written state parses");
        assert_eq!(again, state);
    }
});
