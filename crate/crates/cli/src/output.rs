//! Text and JSON rendering of command results.

use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Value};
use skewline_core::configs::{field_to_json, matrix_to_json, point_to_json};
use skewline_core::verify::VerifyReport;
use skewline_core::{
    Configuration, Field, GroupOrder, GroupResult, GroupoidAnalysis, InvarianceReport, OrbitResult, ProjPoint,
};

/// Element lists longer than this are omitted unless asked for.
pub const ELEMENT_LIMIT: usize = 60;

pub struct Render {
    pub json: bool,
    pub elements: bool,
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn field_text(field: &Field) -> String {
    let terms: Vec<String> = field
        .min_poly()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.to_string() != "0")
        .map(|(k, c)| match k {
            0 => c.to_string(),
            1 => format!("{c}t"),
            _ => format!("{c}t^{k}"),
        })
        .collect();
    format!("Q[t]/({})", terms.join(" + ").replace("1t", "t").replace("+ -", "- "))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

impl Render {
    fn show_elements(&self, group: &GroupResult) -> bool {
        group.is_finite() && (self.elements || group.len() <= ELEMENT_LIMIT)
    }

    fn group_json(&self, group: &GroupResult) -> Value {
        let order = match group.order {
            GroupOrder::Finite(n) => json!(n),
            GroupOrder::ExceedsCap(_) => Value::Null,
        };
        let histogram: BTreeMap<String, usize> = group.histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let shown = self.show_elements(group);
        json!({
            "finite": group.is_finite(),
            "order": order,
            "cap": group.cap,
            "label": group.label.to_string(),
            "alias": group.label.alias(),
            "histogram": histogram,
            "elements": shown.then(|| group.elements.iter().map(matrix_to_json).collect::<Vec<_>>()),
            "elements_suppressed": group.is_finite() && !shown,
        })
    }

    fn group_text(&self, group: &GroupResult, indent: &str) {
        match group.order {
            GroupOrder::Finite(n) => {
                let alias = group.label.alias().map(|a| format!(" ({a})")).unwrap_or_default();
                println!("{indent}vertex group: order {n}, {}{alias}", group.label);
                let hist: Vec<String> = group.histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                println!("{indent}element orders: {}", hist.join(" "));
                if self.show_elements(group) {
                    for g in &group.elements {
                        println!("{indent}  {g}");
                    }
                } else {
                    println!("{indent}elements: {} omitted, pass --elements to list", group.len());
                }
            }
            GroupOrder::ExceedsCap(cap) => {
                println!("{indent}vertex group: Infinite (closure exceeded the cap of {cap} elements)");
            }
        }
    }

    pub fn analyze(
        &self,
        config: &Configuration,
        analysis: &GroupoidAnalysis,
        components: &[(Vec<usize>, usize, GroupResult)],
        invariance: Option<&InvarianceReport>,
        elapsed: Duration,
    ) {
        let mut aux: BTreeMap<usize, usize> = BTreeMap::new();
        for count in analysis.aux_counts.values() {
            *aux.entry(*count).or_default() += 1;
        }
        if self.json {
            let comps: Vec<Value> = components
                .iter()
                .map(|(lines, base, g)| json!({ "lines": lines, "base": base, "group": self.group_json(g) }))
                .collect();
            let inv = invariance.map(|r| {
                json!({
                    "holds": r.holds,
                    "counterexample": r.counterexample.as_ref().map(|c| json!({
                        "src": c.src, "aux": c.aux, "dst": c.dst,
                        "point": c.point.as_ref().map(point_to_json),
                        "image": c.image.as_ref().map(point_to_json),
                    })),
                })
            });
            let aux_json: BTreeMap<String, usize> = aux.iter().map(|(k, v)| (k.to_string(), *v)).collect();
            println!(
                "{}",
                pretty(&json!({
                    "command": "analyze",
                    "configuration": config.name,
                    "field": field_to_json(config.field()),
                    "lines": config.len(),
                    "simple_morphisms": analysis.generators.len(),
                    "auxiliary_counts": aux_json,
                    "components": comps,
                    "marked_invariance": inv,
                    "elapsed_ms": millis(elapsed),
                }))
            );
            return;
        }
        println!(
            "configuration: {} ({} lines over {})",
            config.name,
            config.len(),
            field_text(config.field())
        );
        println!("simple morphisms: {}", analysis.generators.len());
        for (count, pairs) in &aux {
            println!("auxiliary lines per ordered pair: {count} ({pairs} pairs)");
        }
        for (i, (lines, base, group)) in components.iter().enumerate() {
            println!("component {}: lines {:?}, base {base}", i + 1, lines);
            self.group_text(group, "  ");
        }
        if let Some(r) = invariance {
            match &r.counterexample {
                None => println!("marked points invariant: yes"),
                Some(c) => println!(
                    "marked points invariant: no, projection {} -> {} through {} moves {} to {}",
                    c.src,
                    c.dst,
                    c.aux,
                    c.point.as_ref().map_or("-".to_string(), ToString::to_string),
                    c.image.as_ref().map_or("-".to_string(), ToString::to_string),
                ),
            }
        }
        println!("elapsed: {:.1} ms", millis(elapsed));
    }

    pub fn orbit(&self, config: &Configuration, line: usize, start: &ProjPoint, orbit: &OrbitResult, elapsed: Duration) {
        let by_line = orbit.by_line();
        if self.json {
            let members: Vec<Value> = by_line
                .iter()
                .map(|(l, pts)| json!({ "line": l, "points": pts.iter().map(point_to_json).collect::<Vec<_>>() }))
                .collect();
            println!(
                "{}",
                pretty(&json!({
                    "command": "orbit",
                    "configuration": config.name,
                    "field": field_to_json(config.field()),
                    "start": { "line": line, "point": point_to_json(start) },
                    "count": orbit.len(),
                    "truncated": orbit.truncated,
                    "members": members,
                    "elapsed_ms": millis(elapsed),
                }))
            );
            return;
        }
        println!("configuration: {}", config.name);
        println!("start: line {line}, point {start}");
        let truncated = if orbit.truncated { " (truncated at the cap)" } else { "" };
        println!("orbit size: {}{truncated}", orbit.len());
        for (l, pts) in &by_line {
            let shown: Vec<String> = pts.iter().map(ToString::to_string).collect();
            println!("  line {l}: {}", shown.join(" "));
        }
        println!("elapsed: {:.1} ms", millis(elapsed));
    }

    pub fn stabilizer(&self, name: &str, points: &[ProjPoint], group: &GroupResult, elapsed: Duration) {
        if self.json {
            let field = points.first().map(|p| field_to_json(p.field()));
            println!(
                "{}",
                pretty(&json!({
                    "command": "stabilizer",
                    "points_name": name,
                    "field": field,
                    "points": points.iter().map(point_to_json).collect::<Vec<_>>(),
                    "group": self.group_json(group),
                    "elapsed_ms": millis(elapsed),
                }))
            );
            return;
        }
        let shown: Vec<String> = points.iter().map(ToString::to_string).collect();
        println!("{name}: {}", shown.join(" "));
        self.group_text(group, "");
        println!("elapsed: {:.1} ms", millis(elapsed));
    }

    pub fn verify(&self, report: &VerifyReport, elapsed: Duration) {
        if self.json {
            let mut v = serde_json::to_value(report).expect("report serializes");
            v["command"] = json!("verify");
            v["all_passed"] = json!(report.all_passed());
            v["elapsed_ms"] = json!(millis(elapsed));
            println!("{}", pretty(&v));
            return;
        }
        if let Some(c) = &report.corrupted {
            println!("corrupted built-in: {c}");
        }
        for c in &report.criteria {
            println!("[{}] {:>2}. {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name);
            println!("       expected: {}", c.expected);
            println!("       actual:   {}", c.actual);
        }
        let passed = report.criteria.iter().filter(|c| c.passed).count();
        println!("{passed}/{} criteria passed in {:.1} s", report.criteria.len(), elapsed.as_secs_f64());
    }
}
