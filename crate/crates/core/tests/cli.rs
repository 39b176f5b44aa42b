use std::collections::BTreeSet;
use std::process::Command;

use charged3::cli::{self, svg::PALETTE, CURVE_HEADER, REGIONS_HEADER};
use serde_json::Value;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("charged3").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

#[test]
fn roots_of_the_anchor() {
    for extra in [&[][..], &["--float"][..]] {
        let mut args = vec!["roots", "--beta", "1,1"];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(o.code, 0, "{}", o.err);
        let v = json(&o.out);
        assert_eq!(v["region"], 1);
        assert_eq!(v["triple"], serde_json::json!([0, 0, 1]));
        let roots = v["roots"].as_array().unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0]["u"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(roots[0]["interval"], "I3");
        assert!((roots[0]["configuration"]["lambda"].as_f64().unwrap() - 1.25).abs() < 1e-14);
        assert_eq!(roots[0]["potential_sign"], -1.0);
    }
}

#[test]
fn gravitational_roots() {
    let o = run(&["roots", "--gravitational", "--m", "1,2,3"]);
    assert_eq!(o.code, 0);
    let v = json(&o.out);
    assert_eq!(v["alpha"]["a1"], 6.0);
    assert_eq!(v["triple"][2], 1);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["roots"][..],
        &["roots", "--beta", "1"],
        &["roots", "--alpha", "1,1,1", "--beta", "1,1"],
        &["roots", "--beta", "1,1", "--m", "1,-1,1"],
        &["special-points", "--mu", "0"],
        &["regions", "--grid", "1:0:3,0:1:3"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.code, 2, "{args:?}: {}", o.err);
        assert!(o.out.is_empty());
        assert!(!o.err.is_empty());
    }
}

#[test]
fn degenerate_input_exits_three() {
    let o = run(&["roots", "--alpha", "0,0,0"]);
    assert_eq!(o.code, 3);
    assert_eq!(json(&o.err)["error"], "AllZero");
    let o = run(&["releq", "--alpha=-1,-1,-1", "--noncollinear"]);
    assert_eq!(o.code, 3);
    assert_eq!(json(&o.err)["error"], "NonpositiveMultiplier");
}

#[test]
fn help_goes_to_stdout() {
    let o = run(&["--help"]);
    assert_eq!(o.code, 0);
    for sub in ["roots", "regions", "curve", "special-points", "releq", "verify"] {
        assert!(o.out.contains(sub), "{sub} missing from help");
    }
    assert!(!o.out.contains("inject-fault"));
}

#[test]
fn regions_to_stdout() {
    let o = run(&["regions", "--grid", "-1:1:5,-1:1:5"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let lines: Vec<&str> = o.out.lines().collect();
    assert_eq!(lines[0], REGIONS_HEADER);
    assert_eq!(lines.len(), 26);
    let corner: Vec<&str> = lines[25].split(',').collect();
    assert_eq!(corner[..6], ["1.0000000000000000e0", "1.0000000000000000e0", "0", "0", "1", "1"]);
    assert_eq!(corner[6..], ["0", "0", "1"]);
    // The middle row sits on the axis.
    let axis: Vec<&str> = lines[11].split(',').collect();
    assert_eq!(axis[2..], ["", "", "", "B", "", "", ""]);
}

#[test]
fn region_files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let mut outputs = Vec::new();
    for (k, serial) in [(0, false), (1, true)] {
        let (csv, svg) = (path(&format!("r{k}.csv")), path(&format!("r{k}.svg")));
        let mut args = vec!["regions", "--grid", "-0.1:0.05:31,-0.1:0.05:31", "--csv", &csv, "--svg", &svg];
        if serial {
            args.push("--serial");
        }
        let o = run(&args);
        assert_eq!(o.code, 0, "{}", o.err);
        let summary = json(&o.out);
        assert_eq!(summary["cells"], 961);
        outputs.push((std::fs::read(&csv).unwrap(), std::fs::read_to_string(&svg).unwrap(), summary));
    }
    assert_eq!(outputs[0].0, outputs[1].0);
    assert_eq!(outputs[0].1, outputs[1].1);

    let svg = &outputs[0].1;
    let doc = roxmltree::Document::parse(svg).unwrap();
    let fills: BTreeSet<&str> = doc
        .descendants()
        .filter(|n| n.has_tag_name("rect"))
        .filter_map(|n| n.attribute("fill"))
        .collect();
    let regions: Vec<u64> = outputs[0].2["distinct_regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    // The window around the origin holds the small regions.
    for r in [6, 11, 12, 13] {
        assert!(regions.contains(&r), "region {r} missing from {regions:?}");
    }
    for r in &regions {
        assert!(fills.contains(PALETTE[*r as usize - 1]));
    }
    assert!(fills.iter().all(|f| PALETTE.contains(f) || *f == "#ffffff" || *f == "#000000"));
    assert!(doc.descendants().any(|n| n.attribute("id") == Some("curve")));
}

#[test]
fn json_output() {
    let o = run(&["regions", "--grid", "0.5:1:2,0.5:1:2", "--json"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v = json(&o.out);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[3]["label"], 1);
    assert_eq!(v[3]["triple"], serde_json::json!([0, 0, 1]));
    let o = run(&["curve", "--u-range", "0:1", "--samples", "2", "--json"]);
    let v = json(&o.out);
    assert_eq!(v[1]["point"]["kind"], "finite");
    assert!(run(&["roots", "--beta", "1,1", "--json"]).code == 0);
    assert_eq!(run(&["regions", "--json", "--csv", "x.csv"]).code, 2);
}

#[test]
fn palette_is_distinct() {
    let set: BTreeSet<&str> = PALETTE.iter().copied().collect();
    assert_eq!(set.len(), 13);
    assert!(!set.contains("#ffffff") && !set.contains("#000000"));
}

#[test]
fn curve_samples() {
    let o = run(&["curve", "--u-range", "-3:2", "--samples", "11"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let lines: Vec<&str> = o.out.lines().collect();
    assert_eq!(lines[0], CURVE_HEADER);
    let inf: Vec<f64> = lines[1..]
        .iter()
        .filter(|l| l.ends_with(",true"))
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    // xi-, -1 and xi+ are inserted.
    let r = 105f64.sqrt();
    assert_eq!(inf.len(), 3, "{inf:?}");
    assert!((inf[0] - (-13.0 - r) / 8.0).abs() < 1e-12);
    assert_eq!(inf[1], -1.0);
    assert!((inf[2] - (-13.0 + r) / 8.0).abs() < 1e-12);
    let one = lines.iter().find(|l| l.starts_with("1.0000000000000000e0,")).unwrap();
    let f: Vec<&str> = one.split(',').collect();
    assert!((f[1].parse::<f64>().unwrap() + 1.0 / 28.0).abs() < 1e-15);
    assert_eq!(f[4], "false");
}

#[test]
fn special_points_output() {
    let o = run(&["special-points", "--mu", "1"]);
    assert_eq!(o.code, 0);
    let v = json(&o.out);
    assert_eq!(v["eta_minus"], -2.0);
    assert_eq!(v["eta_plus"], -0.5);
    assert_eq!(v["eta0"], 1.0);
    for (_, c) in v["certificates"].as_object().unwrap() {
        assert!(c.as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn relative_equilibria() {
    let o = run(&["releq", "--beta", "1,1", "--u", "0.8"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v = json(&o.out);
    assert_eq!(v["u"], 1.0);
    assert_eq!(v["rank"], 9);
    assert_eq!(v["class"], "RelativeEquilibrium");
    assert!(v["ratio"].as_f64().unwrap() < 1e-9);

    let o = run(&["releq", "--gravitational", "--noncollinear"]);
    let v = json(&o.out);
    assert_eq!(v["class"], "RelativeEquilibrium");
    assert!((v["central_configuration"]["inertia"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let o = run(&["releq", "--gravitational", "--noncollinear", "--lambda", "3"]);
    let v = json(&o.out);
    assert_eq!(v["central_configuration"]["lambda"], 3.0);

    // No root in I1 for these couplings.
    let o = run(&["releq", "--beta", "1,1", "--u=-3"]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o.err)["error"], "NoSuchRoot");
}

#[test]
fn verify_modes() {
    let o = run(&["verify", "--iterations", "0"]);
    assert_eq!(o.code, 0);
    let v = json(&o.out);
    assert_eq!(v["suites"].as_array().unwrap().len(), 0);
    assert_eq!(v["passed"], true);

    let o = run(&["verify", "--iterations", "5", "--inject-fault"]);
    assert_eq!(o.code, 4);
    assert_eq!(json(&o.out)["passed"], false);

    let o = run(&["verify", "--seed", "3", "--iterations", "10"]);
    assert_eq!(o.code, 0, "{}", o.out);
}

#[test]
fn binary_default_verify() {
    let out = Command::new(env!("CARGO_BIN_EXE_charged3")).arg("verify").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(v["iterations"], 100);
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["failures"] == 0));
}

#[test]
fn binary_reports_errors_as_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_charged3"))
        .args(["roots", "--alpha", "0,0,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let v = json(std::str::from_utf8(&out.stderr).unwrap().trim());
    assert_eq!(v["error"], "AllZero");
}
