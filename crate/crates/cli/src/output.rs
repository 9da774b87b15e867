//! Rendering of command results in the three output formats.
//!
//! TEXT is for people: labeled lines, full-precision shortest-round-trip
//! numbers. JSON and CSV are for machines: every floating-point field is
//! printed with 17 significant digits in scientific notation, which
//! round-trips to the exact bit pattern, so two runs that compute the same
//! numbers emit the same bytes.

use std::fmt::Write;

use clap::ValueEnum;
use spingamma::analysis::{AssumptionAudit, SweepPoint, ViolationReport};
use spingamma::models::Model;
use spingamma::types::{Angle, BatchResult, ExperimentResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// 17-significant-digit scientific notation; parses back to the same f64.
pub fn fmt_machine(x: f64) -> String {
    format!("{x:.16e}")
}

/// Incremental JSON object writer for the flat records this tool emits.
struct JsonObject {
    buf: String,
    first: bool,
}

impl JsonObject {
    fn new() -> JsonObject {
        JsonObject {
            buf: String::from("{"),
            first: true,
        }
    }

    fn key(&mut self, key: &str) {
        if !self.first {
            self.buf.push(',');
        }
        self.first = false;
        self.buf.push('"');
        self.buf.push_str(key);
        self.buf.push_str("\":");
    }

    fn num(mut self, key: &str, x: f64) -> JsonObject {
        self.key(key);
        self.buf.push_str(&fmt_machine(x));
        self
    }

    fn int(mut self, key: &str, v: u64) -> JsonObject {
        self.key(key);
        write!(self.buf, "{v}").expect("writing to a string");
        self
    }

    fn str(mut self, key: &str, v: &str) -> JsonObject {
        self.key(key);
        self.buf.push('"');
        for c in v.chars() {
            match c {
                '"' => self.buf.push_str("\\\""),
                '\\' => self.buf.push_str("\\\\"),
                c if (c as u32) < 0x20 => {
                    write!(self.buf, "\\u{:04x}", c as u32).expect("writing to a string")
                }
                c => self.buf.push(c),
            }
        }
        self.buf.push('"');
        self
    }

    fn bool(mut self, key: &str, v: bool) -> JsonObject {
        self.key(key);
        self.buf.push_str(if v { "true" } else { "false" });
        self
    }

    fn array(mut self, key: &str, items: Vec<String>) -> JsonObject {
        self.key(key);
        self.buf.push('[');
        self.buf.push_str(&items.join(","));
        self.buf.push(']');
        self
    }

    fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf
    }
}

pub fn render_bound(n_runs: u64, bound: Angle, format: Format) -> String {
    match format {
        Format::Text => format!(
            "runs per experiment: {n_runs}\nangle window upper:  {} rad\n                     {} deg\n",
            bound.radians(),
            bound.degrees()
        ),
        Format::Json => {
            let json = JsonObject::new()
                .int("n_runs", n_runs)
                .num("bound_rad", bound.radians())
                .num("bound_deg", bound.degrees())
                .finish();
            format!("{json}\n")
        }
        Format::Csv => format!(
            "n_runs,bound_rad,bound_deg\n{n_runs},{},{}\n",
            fmt_machine(bound.radians()),
            fmt_machine(bound.degrees())
        ),
    }
}

pub fn render_simulate(model: Model, result: &ExperimentResult, format: Format) -> String {
    let theta_ab = result.theta_ab();
    let c_exact = model.exact_correlation(theta_ab);
    let s_exact = model.exact_s(theta_ab);
    match format {
        Format::Text => format!(
            "model:        {model}\n\
             theta_a:      {} rad\n\
             theta_b:      {} rad\n\
             theta_ab:     {} rad\n\
             runs:         {}\n\
             equal-sign m: {}\n\
             C empirical:  {}\n\
             S empirical:  {}\n\
             C exact:      {c_exact}\n\
             S exact:      {s_exact}\n",
            result.theta_a().radians(),
            result.theta_b().radians(),
            theta_ab.radians(),
            result.n(),
            result.m(),
            result.correlation(),
            result.s(),
        ),
        Format::Json => {
            let json = JsonObject::new()
                .str("model", &model.to_string())
                .num("theta_a", result.theta_a().radians())
                .num("theta_b", result.theta_b().radians())
                .num("theta_ab", theta_ab.radians())
                .int("n_runs", result.n())
                .int("m", result.m())
                .num("c_emp", result.correlation())
                .num("s_emp", result.s())
                .num("c_exact", c_exact)
                .num("s_exact", s_exact)
                .finish();
            format!("{json}\n")
        }
        Format::Csv => format!(
            "model,theta_a,theta_b,theta_ab,n_runs,m,c_emp,s_emp,c_exact,s_exact\n\
             {model},{},{},{},{},{},{},{},{},{}\n",
            fmt_machine(result.theta_a().radians()),
            fmt_machine(result.theta_b().radians()),
            fmt_machine(theta_ab.radians()),
            result.n(),
            result.m(),
            fmt_machine(result.correlation()),
            fmt_machine(result.s()),
            fmt_machine(c_exact),
            fmt_machine(s_exact),
        ),
    }
}

pub fn render_gamma(model: Model, batch: &BatchResult, format: Format) -> String {
    match format {
        Format::Text => format!(
            "model:       {model}\n\
             experiments: {}\n\
             runs each:   {}\n\
             total m:     {}\n\
             gamma:       {}\n\
             threshold:   {}\n\
             margin:      {}\n\
             verdict:     {}\n",
            batch.n_experiments(),
            batch.n_runs(),
            batch.total_m(),
            batch.gamma(),
            batch.threshold(),
            batch.margin(),
            batch.verdict(),
        ),
        Format::Json => {
            let experiments = batch
                .experiments()
                .iter()
                .enumerate()
                .map(|(index, e)| {
                    JsonObject::new()
                        .int("index", index as u64)
                        .num("theta_a", e.theta_a().radians())
                        .num("theta_b", e.theta_b().radians())
                        .int("m", e.m())
                        .num("s", e.s())
                        .finish()
                })
                .collect();
            let json = JsonObject::new()
                .str("model", &model.to_string())
                .int("n_runs", batch.n_runs())
                .int("n_experiments", batch.n_experiments())
                .int("total_m", batch.total_m())
                .num("gamma", batch.gamma())
                .num("threshold", batch.threshold())
                .num("margin", batch.margin())
                .str("verdict", &batch.verdict().to_string())
                .array("experiments", experiments)
                .finish();
            format!("{json}\n")
        }
        Format::Csv => {
            let mut out = String::from("index,theta_a,theta_b,m,n_runs,s\n");
            for (index, e) in batch.experiments().iter().enumerate() {
                writeln!(
                    out,
                    "{index},{},{},{},{},{}",
                    fmt_machine(e.theta_a().radians()),
                    fmt_machine(e.theta_b().radians()),
                    e.m(),
                    e.n(),
                    fmt_machine(e.s()),
                )
                .expect("writing to a string");
            }
            out
        }
    }
}

pub fn render_report(report: &ViolationReport, format: Format) -> String {
    let margin = report.gamma_qm - report.threshold;
    match format {
        Format::Text => {
            let mut out = format!(
                "experiments:           {}\n\
                 runs each:             {}\n\
                 angle window upper:    {} rad\n\
                 gamma (exact):         {}\n\
                 threshold:             {}\n\
                 margin:                {margin}\n\
                 expectation verdict:   {}\n\
                 violation probability: {}\n",
                report.n_experiments(),
                report.n_runs,
                report.angle_window_upper.radians(),
                report.gamma_qm,
                report.threshold,
                report.expectation_verdict,
                report.violation_probability,
            );
            if report.flagged.is_empty() {
                out.push_str("flagged angles:        none\n");
            } else {
                out.push_str("flagged angles:\n");
                for flag in &report.flagged {
                    let mut reasons = Vec::new();
                    if flag.outside_window {
                        reasons.push("outside window");
                    }
                    if flag.at_least_half_pi {
                        reasons.push("at least pi/2");
                    }
                    writeln!(
                        out,
                        "  [{}] {} rad ({})",
                        flag.index,
                        flag.theta_ab.radians(),
                        reasons.join(", ")
                    )
                    .expect("writing to a string");
                }
            }
            out
        }
        Format::Json => {
            let flagged = report
                .flagged
                .iter()
                .map(|flag| {
                    JsonObject::new()
                        .int("index", flag.index as u64)
                        .num("theta_ab", flag.theta_ab.radians())
                        .bool("outside_window", flag.outside_window)
                        .bool("at_least_half_pi", flag.at_least_half_pi)
                        .finish()
                })
                .collect();
            let json = JsonObject::new()
                .int("n_runs", report.n_runs)
                .int("n_experiments", report.n_experiments())
                .num("angle_window_upper", report.angle_window_upper.radians())
                .num("gamma_qm", report.gamma_qm)
                .num("threshold", report.threshold)
                .num("margin", margin)
                .str(
                    "expectation_verdict",
                    &report.expectation_verdict.to_string(),
                )
                .num("violation_probability", report.violation_probability)
                .array("flagged", flagged)
                .finish();
            format!("{json}\n")
        }
        Format::Csv => format!(
            "n_runs,n_experiments,angle_window_upper,gamma_qm,threshold,margin,\
             expectation_verdict,violation_probability,flagged_count\n\
             {},{},{},{},{},{},{},{},{}\n",
            report.n_runs,
            report.n_experiments(),
            fmt_machine(report.angle_window_upper.radians()),
            fmt_machine(report.gamma_qm),
            fmt_machine(report.threshold),
            fmt_machine(margin),
            report.expectation_verdict,
            fmt_machine(report.violation_probability),
            report.flagged.len(),
        ),
    }
}

pub fn render_audit(audit: &AssumptionAudit, format: Format) -> String {
    let theta_ab = audit.theta_a.separation(audit.theta_b);
    match format {
        Format::Text => format!(
            "model:            {}\n\
             theta_a:          {} rad\n\
             theta_b:          {} rad\n\
             theta_ab:         {} rad\n\
             runs per trial:   {}\n\
             trials:           {}\n\
             zero-m trials:    {}\n\
             zero-m frequency: {}\n\
             assumption held:  {}\n",
            audit.model,
            audit.theta_a.radians(),
            audit.theta_b.radians(),
            theta_ab.radians(),
            audit.n_runs,
            audit.trials,
            audit.zero_m_trials,
            audit.zero_m_frequency,
            audit.assumption_held,
        ),
        Format::Json => {
            let json = JsonObject::new()
                .str("model", &audit.model.to_string())
                .num("theta_a", audit.theta_a.radians())
                .num("theta_b", audit.theta_b.radians())
                .num("theta_ab", theta_ab.radians())
                .int("n_runs", audit.n_runs)
                .int("trials", audit.trials)
                .int("zero_m_trials", audit.zero_m_trials)
                .num("zero_m_frequency", audit.zero_m_frequency)
                .bool("assumption_held", audit.assumption_held)
                .finish();
            format!("{json}\n")
        }
        Format::Csv => format!(
            "model,theta_a,theta_b,theta_ab,n_runs,trials,zero_m_trials,\
             zero_m_frequency,assumption_held\n\
             {},{},{},{},{},{},{},{},{}\n",
            audit.model,
            fmt_machine(audit.theta_a.radians()),
            fmt_machine(audit.theta_b.radians()),
            fmt_machine(theta_ab.radians()),
            audit.n_runs,
            audit.trials,
            audit.zero_m_trials,
            fmt_machine(audit.zero_m_frequency),
            audit.assumption_held,
        ),
    }
}

pub fn render_sweep(model: Model, n_runs: u64, points: &[SweepPoint], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("model: {model}, runs per point: {n_runs}\n");
            writeln!(
                out,
                "{:<24}{:<24}{:<24}{:<24}s_emp",
                "theta_ab", "c_exact", "c_emp", "s_exact"
            )
            .expect("writing to a string");
            for p in points {
                writeln!(
                    out,
                    "{:<24}{:<24}{:<24}{:<24}{}",
                    p.theta_ab.radians(),
                    p.c_exact,
                    p.c_emp,
                    p.s_exact,
                    p.s_emp
                )
                .expect("writing to a string");
            }
            out
        }
        Format::Json => {
            let rows = points
                .iter()
                .map(|p| {
                    JsonObject::new()
                        .num("theta_ab", p.theta_ab.radians())
                        .num("c_exact", p.c_exact)
                        .num("c_emp", p.c_emp)
                        .num("s_exact", p.s_exact)
                        .num("s_emp", p.s_emp)
                        .finish()
                })
                .collect();
            let json = JsonObject::new()
                .str("model", &model.to_string())
                .int("n_runs", n_runs)
                .int("steps", points.len() as u64)
                .array("points", rows)
                .finish();
            format!("{json}\n")
        }
        Format::Csv => {
            let mut out = String::from("theta_ab,c_exact,c_emp,s_exact,s_emp\n");
            for p in points {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_machine(p.theta_ab.radians()),
                    fmt_machine(p.c_exact),
                    fmt_machine(p.c_emp),
                    fmt_machine(p.s_exact),
                    fmt_machine(p.s_emp),
                )
                .expect("writing to a string");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_format_has_seventeen_significant_digits() {
        assert_eq!(fmt_machine(0.01), "1.0000000000000000e-2");
        assert_eq!(fmt_machine(-0.5), "-5.0000000000000000e-1");
        assert_eq!(fmt_machine(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_machine(10_000.0), "1.0000000000000000e4");
    }

    #[test]
    fn machine_format_round_trips_exactly() {
        for &x in &[
            0.020000333348334226,
            -0.49999999999999994,
            0.002499979166736111,
            1.0 / 3.0,
            f64::MIN_POSITIVE,
        ] {
            let printed = fmt_machine(x);
            let parsed: f64 = printed.parse().unwrap();
            assert_eq!(parsed.to_bits(), x.to_bits(), "{printed}");
        }
    }

    #[test]
    fn json_builder_escapes_strings() {
        let json = JsonObject::new().str("k", "a\"b\\c\n").finish();
        assert_eq!(json, "{\"k\":\"a\\\"b\\\\c\\u000a\"}");
    }

    #[test]
    fn json_builder_separates_fields() {
        let json = JsonObject::new()
            .int("a", 1)
            .bool("b", true)
            .array("c", vec![String::from("2"), String::from("3")])
            .finish();
        assert_eq!(json, r#"{"a":1,"b":true,"c":[2,3]}"#);
    }
}
