#![no_main]
use libfuzzer_sys::fuzz_target;
use qubitloss::catalog::{named_state, CatalogKey};

fuzz_target!(|data: &[u8]| {
    let Some((&size, name)) = data.split_first() else {
        return;
    };
    let Ok(name) = std::str::from_utf8(name) else {
        return;
    };
    if let Ok(key) = name.parse::<CatalogKey>() {
        assert_eq!(key.to_string().parse::<CatalogKey>().unwrap(), key);
        let _ = named_state(key, Some(usize::from(size % 12)));
    }
});
