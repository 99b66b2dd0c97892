use serde_json::Value;

use crate::selftest::CriterionOutcome;

/// Pretty JSON. Values are built as `serde_json::Value` (sorted maps), so parsing the
/// output and printing it again gives the same bytes.
pub fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    if let Some(s) = scalar(v) {
        out.push((prefix.to_string(), s));
        return;
    }
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        _ => unreachable!(),
    }
}

/// Aligned `key  value` lines for a report.
pub fn text(report: &Value) -> String {
    let mut rows = Vec::new();
    for section in ["input", "polytope", "result"] {
        if let Some(v) = report.get(section) {
            flatten(if section == "result" { "" } else { section }, v, &mut rows);
        }
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:width$}  {v}\n")).collect()
}

pub fn selftest_table(outcomes: &[CriterionOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        s.push_str(&format!("{verdict}  {:>2}  {}\n", o.id, o.title));
        for c in o.failures() {
            s.push_str(&format!("          {}: expected {}, got {}\n", c.name, c.expected, c.observed));
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    s.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
    s
}
