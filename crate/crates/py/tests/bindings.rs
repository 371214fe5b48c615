use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(klpy::klpy)(py);
        let locals = PyDict::new(py);
        locals.set_item("klpy", module).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, None, Some(&locals)) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn field_and_sums() {
    run(r#"
f = klpy.Field(7)
assert f.q == 7 and f.log(3) == 1
assert f.mul(3, 5) == 1 and f.inv(3) == 5
f4 = klpy.Field(2, 2)
assert f4.trace(2) == 1
v = klpy.kloosterman(3, 1, 2, 1)
assert abs(v - 1) < 1e-9
t = klpy.kloosterman_table(5, 1, 3)
n = klpy.kloosterman_table(5, 1, 3, method="naive")
assert max(abs(a - b) for a, b in zip(t, n)) < 1e-9
assert klpy.weil_ratio(11, 1, 2) <= 2 + 1e-6
m = klpy.moments(101, 1, 2, 2)
assert m[0] == 1 and abs(m[2] - 1) < 1
assert klpy.monodromy(7, 2) == "G2"
"#);
}

#[test]
fn roots_and_reports() {
    run(r#"
import json
g2 = klpy.RootSystem("G2")
assert g2.h == 6 and g2.rank == 2 and len(g2.roots()) == 12
assert g2.dual().label == "G2" and g2.weyl_order() == 12
assert klpy.invariant_moments("G2", "qm", 4) == [1, 0, 1, 1, 4]
assert json.loads(klpy.census("E8", "qm"))["predicted_minus_chi"] == 8
assert json.loads(klpy.wild("F4", 5))["swan"] == 4
try:
    klpy.RootSystem("Q3")
    raise AssertionError("no error")
except ValueError:
    pass
"#);
}
