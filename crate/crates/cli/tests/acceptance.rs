//! End-to-end acceptance run through the binary. Prints one PASS/FAIL line
//! per criterion and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use serde_json::Value;

/// log2 of the residual bound at 256 bits.
const LOG2_TOL_256: f64 = -128.0;
/// log2 of the residual bound at 512 bits.
const LOG2_TOL_512: f64 = -256.0;
const PRIMITIVES_SECONDS: f64 = 10.0;
const JACKSON_SECONDS: f64 = 300.0;

const PRIMITIVES: [&str; 8] = [
    "theta_inversion_ti",
    "theta_quasi_period_tqp",
    "addition_ra",
    "poch_split_ap",
    "poch_reverse_ep",
    "poch_invert_ip",
    "poch_nome_shift_qp",
    "det_identity_di",
];
const PARTIAL_FRACTIONS: [&str; 7] = ["pf_rational", "pf_ww", "pf_epf", "pf_epa", "pf_dn", "pf_dn_alt", "pf_epf:ww"];
const JACKSON: [&str; 10] = [
    "milne_ft",
    "an_jackson_simplex",
    "an_jackson_classical",
    "an_jackson_box",
    "dn_jackson_simplex",
    "dn_jackson_classical",
    "dn_jackson_box",
    "dn_jackson_box_reversed",
    "cn_jackson_box",
    "warnaar_first",
];
const BAILEY: [&str; 5] = ["bailey_an_box", "bailey_an_simplex", "bailey_cn_an", "bailey_dn", "bailey_dn_an"];
const CROSS: [&str; 3] = ["cross_check_cr_vs_aaj", "cross_check_cjt_vs_wj", "check_reparametrization"];

struct Run {
    code: i32,
    seconds: f64,
    stdout: Vec<u8>,
    doc: Value,
}

fn ellhyp(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ellhyp"))
        .args(args)
        .args(["--output", "json"])
        .env_remove("EH_PRECISION_BITS")
        .output()
        .expect("binary runs");
    let seconds = start.elapsed().as_secs_f64();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap_or(-1), seconds, stdout: out.stdout, doc }
}

fn reports(run: &Run) -> Vec<&Value> {
    run.doc["reports"].as_array().map(|v| v.iter().collect()).unwrap_or_default()
}

fn id(r: &Value) -> &str {
    r["descriptor_id"].as_str().unwrap_or("")
}

fn rank(r: &Value) -> u64 {
    r["shape"]["rank"].as_u64().unwrap_or(0)
}

fn log2_residual(r: &Value) -> f64 {
    match r["max_residual"].as_str().map(str::parse::<f64>) {
        Some(Ok(0.0)) => f64::NEG_INFINITY,
        Some(Ok(v)) if v > 0.0 => v.log2(),
        _ => f64::NAN,
    }
}

/// Outcome of one criterion: the verdict and a short explanation.
struct Verdict {
    ok: bool,
    detail: String,
}

/// Every report in `rs` passed, ran `trials` trials (if given) and stayed
/// below `2^log2_tol`.
fn all_within(rs: &[&Value], trials: Option<u64>, log2_tol: f64) -> Verdict {
    if rs.is_empty() {
        return Verdict { ok: false, detail: "no reports".into() };
    }
    let mut worst = f64::NEG_INFINITY;
    for r in rs {
        let l = log2_residual(r);
        let trials_ok = trials.map_or(true, |t| r["trials"].as_u64() == Some(t));
        if !(r["passed"] == true && l < log2_tol && trials_ok) {
            return Verdict {
                ok: false,
                detail: format!("{} {} failed: log2 max residual {l:.1}, trials {}", id(r), r["shape"], r["trials"]),
            };
        }
        worst = worst.max(l);
    }
    Verdict { ok: true, detail: format!("{} reports, worst log2 residual {worst:.1}", rs.len()) }
}

fn of<'a>(rs: &[&'a Value], ids: &[&str]) -> Vec<&'a Value> {
    rs.iter().copied().filter(|r| ids.contains(&id(r))).collect()
}

fn missing_ranks(rs: &[&Value], ids: &[&str], ranks: &[u64], p_zero: Option<bool>) -> Option<String> {
    for want in ids {
        let have: BTreeSet<u64> = rs
            .iter()
            .filter(|r| id(r) == *want && p_zero.map_or(true, |z| r["p_zero"] == z))
            .map(|r| rank(r))
            .collect();
        if let Some(n) = ranks.iter().find(|n| !have.contains(n)) {
            return Some(format!("{want} has no report at n={n}"));
        }
    }
    None
}

fn and(v: Verdict, gap: Option<String>) -> Verdict {
    match gap {
        Some(g) => Verdict { ok: false, detail: g },
        None => v,
    }
}

fn exited_cleanly(run: &Run, v: Verdict) -> Verdict {
    if run.code == 0 || !v.ok {
        v
    } else {
        Verdict { ok: false, detail: format!("exit code {}", run.code) }
    }
}

fn main() -> ExitCode {
    let mut lines: Vec<(&str, Verdict)> = Vec::new();

    let prim = ellhyp(&["suite", "--suite", "primitives", "--trials", "100"]);
    let rs = reports(&prim);
    let mut v = and(all_within(&of(&rs, &PRIMITIVES), Some(100), LOG2_TOL_256), missing_ranks(&rs, &PRIMITIVES, &[], None));
    if v.ok && of(&rs, &PRIMITIVES).iter().map(|r| id(r)).collect::<BTreeSet<_>>().len() != PRIMITIVES.len() {
        v = Verdict { ok: false, detail: "a primitive identity is missing".into() };
    }
    if v.ok && prim.seconds >= PRIMITIVES_SECONDS {
        v = Verdict { ok: false, detail: format!("took {:.1} s", prim.seconds) };
    }
    v.detail = format!("{}, {:.1} s", v.detail, prim.seconds);
    lines.push(("primitive suite, 100 trials, < 10 s", exited_cleanly(&prim, v)));

    let pf = ellhyp(&["suite", "--suite", "partial-fractions", "--trials", "100"]);
    let rs = reports(&pf);
    let v = and(
        all_within(&of(&rs, &PARTIAL_FRACTIONS), Some(100), LOG2_TOL_256),
        missing_ranks(&rs, &PARTIAL_FRACTIONS, &[2, 3, 4, 5], None),
    );
    lines.push(("partial-fraction suite incl. reduction to ww, n = 2..5", exited_cleanly(&pf, v)));

    let all = ellhyp(&["suite", "--suite", "all"]);
    let rs = reports(&all);

    let jackson: Vec<&Value> = of(&rs, &JACKSON);
    let normal: Vec<&Value> =
        jackson.iter().copied().filter(|r| r["p_zero"] == false || id(r) == "milne_ft").collect();
    let mut v = and(all_within(&normal, Some(50), LOG2_TOL_256), missing_ranks(&normal, &JACKSON, &[1, 2, 3], None));
    let seconds: f64 = jackson.iter().filter_map(|r| r["wall_time_ms"].as_f64()).sum::<f64>() / 1e3;
    if v.ok && seconds >= JACKSON_SECONDS {
        v = Verdict { ok: false, detail: format!("took {seconds:.1} s") };
    }
    v.detail = format!("{}, {seconds:.1} s", v.detail);
    lines.push(("Jackson suite, 50 trials per shape, < 5 min", v));

    let v = and(all_within(&of(&rs, &BAILEY), Some(30), LOG2_TOL_256), missing_ranks(&rs, &BAILEY, &[1, 2], None));
    lines.push(("Bailey suite, 30 trials per shape", v));

    let v = and(all_within(&of(&rs, &CROSS), None, LOG2_TOL_256), missing_ranks(&rs, &CROSS, &[1, 2], None));
    lines.push(("cross-checks between identities", v));

    let q_only: Vec<&str> = JACKSON[1..].to_vec();
    let zero: Vec<&Value> = jackson.iter().copied().filter(|r| r["p_zero"] == true).collect();
    let v = and(all_within(&zero, Some(50), LOG2_TOL_256), missing_ranks(&zero, &q_only, &[1, 2, 3], Some(true)));
    lines.push(("p = 0 specializations of the Jackson suite", v));

    let swap = of(&rs, &["bailey_cn_an:swap_dg"]);
    lines.push(("d <-> g symmetry of the C_n Bailey transformation, 20 draws", all_within(&swap, Some(20), LOG2_TOL_256)));

    let a = ellhyp(&["suite", "--suite", "all", "--no-timing"]);
    let b = ellhyp(&["suite", "--suite", "all", "--no-timing"]);
    let same = a.code == 0 && b.code == 0 && !a.stdout.is_empty() && a.stdout == b.stdout;
    let v = Verdict {
        ok: same && all.code == 0,
        detail: format!("{} bytes, identical: {same}; timed run exit code {}", a.stdout.len(), all.code),
    };
    lines.push(("same seed gives byte-identical JSON for suite all", v));

    let hi = ellhyp(&["suite", "--suite", "jackson", "--precision", "512"]);
    let rs = reports(&hi);
    let v = and(all_within(&rs, Some(50), LOG2_TOL_512), missing_ranks(&rs, &JACKSON, &[1, 2, 3], None));
    lines.push(("Jackson suite at 512 bits below 2^-256", exited_cleanly(&hi, v)));

    let mut failed = 0;
    for (name, v) in &lines {
        println!("{} {name}: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.ok);
    }
    println!("acceptance: {}/{} criteria passed", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
