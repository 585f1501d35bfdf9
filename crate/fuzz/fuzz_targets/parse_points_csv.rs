#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // must never panic on arbitrary input
    let Ok(points) = cech_core::parse_points_csv_str(text) else {
        return;
    };
    // accepted input round-trips exactly through the writer
    let rewritten = cech_core::io::points_to_csv(&points);
    let reparsed = cech_core::parse_points_csv_str(&rewritten).expect("round trip parses");
    assert_eq!(points, reparsed);
});
