#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = bundlekit::io::parse_drawing(text) {
        let json = bundlekit::io::drawing_to_json(&d, None).expect("valid drawing serializes");
        assert_eq!(bundlekit::io::parse_drawing(&json).expect("own output parses"), d);
    }
    let _ = bundlekit::io::drawing_meta(text);
});
