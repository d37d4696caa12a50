//! Fuzzes the edge-list parser: arbitrary bytes must never panic, and every
//! accepted instance must round-trip through render/parse unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = streammatch::parse_instance(text) {
        let again = streammatch::parse_instance(&inst.render()).expect("rendered form parses");
        assert_eq!(inst.graph, again.graph, "render/parse round trip");
    }
});
