#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((g, _)) = bundlekit::io::parse_edgelist(text) {
            let again = bundlekit::io::format_edgelist(&g);
            let (back, _) = bundlekit::io::parse_edgelist(&again).expect("own output parses");
            assert_eq!(back, g);
        }
    }
});
