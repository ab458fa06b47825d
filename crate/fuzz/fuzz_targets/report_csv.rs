#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| akr_cli::fuzz_harness::report_csv(data));
