#![no_main]

use std::ffi::OsString;

use casimir_scatter::parse_command_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let argv: Vec<OsString> = std::iter::once("casimir-scatter")
        .chain(text.split_whitespace())
        .map(OsString::from)
        .collect();
    let _ = parse_command_line(&argv);
});
