use serde_json::Value;

/// Markdown rendering of a report envelope. Objects become bullet lists,
/// arrays of flat objects become tables.
pub fn markdown(envelope: &Value) -> String {
    let mut out = String::new();
    let command = envelope["command"].as_str().unwrap_or("report");
    let passed = envelope["passed"].as_bool().unwrap_or(false);
    out.push_str(&format!("# rector {command}: {}\n\n", if passed { "PASS" } else { "FAIL" }));
    out.push_str("## Configuration\n\n");
    render_value(&envelope["config"], 3, &mut out);
    out.push_str("\n## Report\n\n");
    render_value(&envelope["report"], 3, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(xs) if xs.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(|y| scalar(y).is_some() && !y.is_array()))) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn is_table(xs: &[Value]) -> bool {
    !xs.is_empty() && xs.iter().all(|x| x.as_object().is_some_and(|o| o.values().all(|v| scalar(v).is_some())))
}

fn render_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            let mut nested = Vec::new();
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("- **{k}**: {s}\n")),
                    None => nested.push((k, x)),
                }
            }
            for (k, x) in nested {
                out.push_str(&format!("\n{} {k}\n\n", "#".repeat(level.min(6))));
                render_value(x, level + 1, out);
            }
        }
        Value::Array(xs) if is_table(xs) => {
            let mut cols: Vec<String> = Vec::new();
            for x in xs {
                for k in x.as_object().unwrap().keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
            out.push_str(&format!("| {} |\n", cols.join(" | ")));
            out.push_str(&format!("|{}\n", " --- |".repeat(cols.len())));
            for x in xs {
                let cells: Vec<String> = cols.iter().map(|c| x.get(c).and_then(scalar).unwrap_or_default()).collect();
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("- {s}\n")),
                    None => {
                        out.push_str(&format!("\n{} item {i}\n\n", "#".repeat(level.min(6))));
                        render_value(x, level + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{}\n", scalar(other).unwrap_or_default())),
    }
}
