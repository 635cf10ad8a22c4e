#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| cogsimp_fuzz::load_corpus_check(data));
