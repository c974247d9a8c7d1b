//! Acceptance criteria. Prints one pass/fail line per criterion and exits nonzero when any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qhsa::config::{RunConfig, Suite};
use qhsa::data;
use qhsa::report::{CheckRecord, Report};
use qhsa::suites::{plan, run};

type Verdict = Result<String, String>;

fn config(suites: &[Suite]) -> RunConfig {
    RunConfig::new(data::all()).with_suites(suites)
}

fn summarize(records: &[CheckRecord]) -> Verdict {
    if records.is_empty() {
        return Err("no checks ran".into());
    }
    match records.iter().find(|r| !r.passed()) {
        Some(bad) => Err(format!(
            "{} of {} checks failed, first {}: {}",
            records.iter().filter(|r| !r.passed()).count(),
            records.len(),
            bad.id,
            bad.witness.as_deref().unwrap_or("")
        )),
        None => Ok(format!("{} checks", records.len())),
    }
}

fn suite(s: Suite) -> Result<Report, String> {
    run(&config(&[s])).map_err(|e| e.to_string())
}

fn keys(s: Suite, keys: &[&str]) -> Verdict {
    let checks: Vec<_> = plan(&config(&[s])).into_iter().filter(|c| keys.contains(&c.key)).collect();
    summarize(&checks.iter().map(|c| c.execute()).collect::<Vec<_>>())
}

/// Every id in `required` is present in the report.
fn covers(report: &Report, required: &[String]) -> Result<(), String> {
    match required.iter().find(|id| !report.check.iter().any(|c| &c.id == *id)) {
        Some(id) => Err(format!("missing check {id}")),
        None => Ok(()),
    }
}

fn suite_covering(s: Suite, required: &[&str]) -> Verdict {
    let report = suite(s)?;
    covers(&report, &required.iter().map(|r| r.to_string()).collect::<Vec<_>>())?;
    summarize(&report.check)
}

fn c1() -> Verdict {
    keys(Suite::DatumValidate, &["datum-validate.examples"])
}

fn c2() -> Verdict {
    keys(Suite::BosonIdentities, &["boson-identities.binomial-recursion", "boson-identities.serre-sum"])
}

fn c3() -> Verdict {
    let report = suite(Suite::RepVerify)?;
    // every bundled datum contributes one label per vertex and per ordered pair
    for ld in data::all() {
        let d = ld.datum();
        let prefix = format!("rep-verify.relations[{}:", ld.name);
        let labels = report.check.iter().filter(|c| c.id.starts_with(&prefix)).count();
        if labels < d.rank() * d.rank() {
            return Err(format!("{} has only {labels} labels", ld.name));
        }
    }
    summarize(&report.check)
}

fn c4() -> Verdict {
    let report = suite(Suite::QhsaDifferential)?;
    let batches = report.check.iter().filter(|c| c.id.starts_with("qhsa-differential.homomorphism")).count();
    if batches != 10 * data::NAMES.len() {
        return Err(format!("{batches} homomorphism batches"));
    }
    summarize(&report.check)
}

fn c5() -> Verdict {
    let records: Vec<_> = plan(&config(&[Suite::QhsaDifferential]))
        .into_iter()
        .filter(|c| c.key == "qhsa-differential.independence")
        .map(|c| c.execute())
        .collect();
    for id in ["super:i:2", "super:j:2", "super:j:3", "super:i:1,j:1"] {
        let id = format!("qhsa-differential.independence[{id}]");
        if !records.iter().any(|r| r.id == id) {
            return Err(format!("missing check {id}"));
        }
    }
    summarize(&records)
}

fn c6() -> Verdict {
    suite_covering(
        Suite::SerreRadical,
        &[
            "serre-radical.generator[super:i]",
            "serre-radical.generator[even:i]",
            "serre-radical.commutator[orthogonal:e,o]",
        ],
    )
}

fn c7() -> Verdict {
    let report = suite(Suite::BosonIdentities)?;
    for key in ["recursion", "commutation", "serre-operator", "form"] {
        let prefix = format!("boson-identities.{key}[");
        if !report.check.iter().any(|c| c.id.starts_with(&prefix)) {
            return Err(format!("no {key} checks"));
        }
    }
    summarize(&report.check)
}

fn c8() -> Verdict {
    suite_covering(
        Suite::Onh,
        &[
            "onh.idempotent[super:i;n=4]",
            "onh.idempotent[even:i;n=4]",
            "onh.tau-omega0[super:i;n=5]",
            "onh.tau-omega0[even:i;n=5]",
            "onh.center[super:i;n=3]",
            "onh.trivial-module[super:j]",
        ],
    )
}

fn c9() -> Verdict {
    let report = suite(Suite::Pairing)?;
    if !report.check.iter().any(|c| c.id.starts_with("pairing.series[super:")) {
        return Err("no pairing series for the super datum".into());
    }
    summarize(&report.check)
}

fn c10() -> Verdict {
    let report = suite(Suite::SerreCat)?;
    // orthogonal pairs of all four parity combinations, plus Serre instances for an even and an odd real vertex
    for prefix in [
        "serre-cat.orthogonal[orthogonal:e,f",
        "serre-cat.orthogonal[orthogonal:e,o",
        "serre-cat.orthogonal[orthogonal:o,e",
        "serre-cat.orthogonal[orthogonal:o,p",
        "serre-cat.serre[even:i,j",
        "serre-cat.serre[super:i,j",
    ] {
        if !report.check.iter().any(|c| c.id.starts_with(prefix)) {
            return Err(format!("no check matching {prefix}"));
        }
    }
    summarize(&report.check)
}

fn c11() -> Verdict {
    let report = suite(Suite::Mackey)?;
    summarize(&report.check)
}

fn c12() -> Verdict {
    let dir = std::env::temp_dir().join(format!("qhsa-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let report = |jobs: &str| -> Result<Vec<u8>, String> {
        let out: PathBuf = dir.join(format!("jobs{jobs}.toml"));
        let status = Command::new(env!("CARGO_BIN_EXE_qhsa"))
            .args(["run", "--suite", "qhsa-differential,onh,pairing,serre-radical", "--seed", "11", "--jobs", jobs])
            .arg("--out")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("--jobs {jobs} exited with {}", status.status));
        }
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let one = report("1")?;
    let eight = report("8")?;
    let _ = std::fs::remove_dir_all(&dir);
    if one == eight {
        Ok(format!("{} identical bytes", one.len()))
    } else {
        Err("reports differ".into())
    }
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Verdict,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { name: "datum validation examples", limit: secs(1), run: c1 },
        Criterion { name: "binomial recursion and Serre sum identities", limit: secs(5), run: c2 },
        Criterion { name: "polynomial representation relations", limit: secs(120), run: c3 },
        Criterion { name: "straightening against the polynomial representation", limit: secs(120), run: c4 },
        Criterion { name: "basis independence", limit: secs(60), run: c5 },
        Criterion { name: "Serre and commutator elements in the radical", limit: secs(60), run: c6 },
        Criterion { name: "boson operator identities and form", limit: secs(60), run: c7 },
        Criterion { name: "one-vertex nil-Hecke computations", limit: secs(60), run: c8 },
        Criterion { name: "graded dimensions against the form", limit: secs(120), run: c9 },
        Criterion { name: "categorified Serre relations", limit: secs(300), run: c10 },
        Criterion { name: "Mackey decomposition", limit: secs(120), run: c11 },
        Criterion { name: "reports independent of pool width", limit: secs(600), run: c12 },
    ];
    let mut failed = 0;
    for (n, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(msg) if elapsed > c.limit => Err(format!("{msg}, over the {:?} limit", c.limit)),
            v => v,
        };
        let (tag, msg) = match &verdict {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        println!("criterion {:2}: {tag} ({:.2}s) {}: {msg}", n + 1, elapsed.as_secs_f64(), c.name);
        failed += usize::from(verdict.is_err());
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
