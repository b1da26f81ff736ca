#![no_main]

use bundlekit::config::Config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = Config::parse(text) {
            assert_eq!(Config::parse(&c.to_key_values()).expect("dump parses"), c);
        }
    }
});
