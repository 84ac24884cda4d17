#![no_main]

use casimir_scatter::config::{parse_config, to_flags};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(settings) = parse_config(text) {
        assert_eq!(to_flags(&settings).len(), settings.len());
    }
});
