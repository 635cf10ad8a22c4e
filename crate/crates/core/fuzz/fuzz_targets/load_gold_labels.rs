#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| cogsimp_fuzz::load_gold_labels_check(data));
