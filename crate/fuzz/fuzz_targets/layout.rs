#![no_main]

use libfuzzer_sys::fuzz_target;

// First byte picks the vertex count, the rest is the coordinates file.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok((points, _)) = bundlekit::io::parse_layout(text, n as usize) {
            assert_eq!(points.len(), n as usize);
            assert!(points.iter().all(|p| p.is_finite()));
        }
    }
});
