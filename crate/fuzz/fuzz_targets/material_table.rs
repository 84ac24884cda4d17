#![no_main]

use casimir_core::model::{eval_material, MaterialModel, MaterialTable};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = text.parse::<MaterialTable>() {
        let model = MaterialModel::Tabulated(table);
        for kappa in [1e-6, 0.5, 1.0, 3.0, 1e6] {
            let _ = eval_material(&model, kappa);
        }
    }
});
