#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // must never panic on arbitrary input
    let Ok(mask) = cech_core::parse_mask_pgm_str(text) else {
        return;
    };
    // accepted masks round-trip through the writer
    let rewritten = cech_core::io::mask_to_pgm(&mask);
    let reparsed = cech_core::parse_mask_pgm_str(&rewritten).expect("round trip parses");
    assert_eq!(mask, reparsed);
});
