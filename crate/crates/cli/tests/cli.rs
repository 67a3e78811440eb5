use std::collections::HashMap;
use std::path::Path;
use std::process::Command;

use toeplitz_lmi::region::{svg_cell_px, svg_origin, CellClass, GridSpec};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Out {
    let out = Command::new(env!("CARGO_BIN_EXE_toeplitz-lmi"))
        .args(args)
        .output()
        .expect("binary runs");
    Out {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn fields(stdout: &str) -> HashMap<String, String> {
    stdout
        .lines()
        .filter_map(|l| l.split_once(' '))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn field_f64(stdout: &str, key: &str) -> f64 {
    fields(stdout)[key].parse().unwrap()
}

fn assert_usage_error(out: &Out) {
    assert_eq!(
        out.code, 2,
        "stdout {:?} stderr {:?}",
        out.stdout, out.stderr
    );
    assert!(out.stdout.is_empty(), "{:?}", out.stdout);
    assert_eq!(out.stderr.trim_end().lines().count(), 1, "{:?}", out.stderr);
}

#[test]
fn eig_min_encloses_p3_value() {
    let out = run(&[
        "eig-min", "--kind", "pm", "--m", "3", "--p", "2", "1", "0.8",
    ]);
    assert_eq!(out.code, 0);
    let (lo, hi) = (field_f64(&out.stdout, "lo"), field_f64(&out.stdout, "hi"));
    assert!(lo <= -0.4 && -0.4 <= hi, "[{lo}, {hi}]");
    assert!(hi - lo <= 1e-10);
    assert_eq!(fields(&out.stdout)["converged"], "true");
}

#[test]
fn eig_min_of_moment_matrix_from_pair() {
    let out = run(&[
        "eig-min", "--kind", "rm", "--m", "3", "--c", "0", "0", "--d", "0.8", "1", "--tol", "1e-13",
    ]);
    assert_eq!(out.code, 0);
    // R_3 of (2, 1, 0.8): (1, 0, -1) gives 2 - 0.8; the others solve
    // x^2 - 4.8 x + 3.6 = 0 on span{(1, 0, 1), (0, 1, 0)}.
    let expected = (4.8 - (4.8f64 * 4.8 - 4.0 * 3.6).sqrt()) / 2.0;
    let expected = expected.min(1.2);
    assert!((field_f64(&out.stdout, "midpoint") - expected).abs() < 1e-12);
}

#[test]
fn stable_exit_codes() {
    let out = run(&["stable", "--d", "0", "0"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "stable true\n"));
    // (z + 1)^2
    let out = run(&["stable", "--d", "1", "2"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "stable false\n"));
    let out = run(&["stable", "--d", "-0.5", "0.25"]);
    assert_eq!(out.code, 0);
}

#[test]
fn find_m0_prints_thirty() {
    let out = run(&[
        "find-m0", "--c", "0", "0", "--d", "0.8", "1", "--max-m", "100",
    ]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "30\n"));
}

#[test]
fn find_m0_absence_and_precondition_are_distinct() {
    let out = run(&[
        "find-m0", "--c", "0", "0", "--d", "0.8", "1", "--max-m", "29",
    ]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "none\n"));

    // 2 + 2 cos 2 theta vanishes: d is outside P^c.
    let out = run(&["find-m0", "--c", "0", "0", "--d", "1", "0", "--max-m", "60"]);
    assert_usage_error(&out);
    assert!(out.stderr.contains("not in P^c"));
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        &[
            "eig-min", "--kind", "pm", "--m", "2", "--p", "2", "1", "0.8",
        ][..],
        &["eig-min", "--kind", "xx", "--m", "4", "--p", "2"],
        &[
            "eig-min", "--kind", "pm", "--m", "4", "--p", "2", "--tol", "0",
        ],
        &["eig-min", "--kind", "pm", "--m", "4"],
        &["matrix", "--kind", "pm", "--m", "4", "--p", "2", "nan"],
        &["member", "--set", "pcm", "--c", "0", "0", "--d", "0", "0"],
        &["member", "--set", "pc", "--c", "3", "0", "--d", "0", "0"],
        &["member", "--set", "pc", "--c", "0", "--d", "0", "0"],
        &["stable"],
        &["trig-min", "--p", "1", "--tol", "-1"],
        &["converge", "--p", "2", "1", "--m-from", "5", "--m-to", "4"],
        &["region", "--c", "0", "0", "--m", "3", "--out", "x.png"],
        &[
            "region", "--c", "0", "0", "--m", "3", "--fix", "nonsense", "--out", "x.csv",
        ],
        &["boundary", "--d0", "1"],
        &["frobnicate"],
        &[],
        &["--file", "/nonexistent/problem.json", "stable"],
    ] {
        let out = run(args);
        assert_usage_error(&out);
    }
}

#[test]
fn verdicts_agree_with_exit_codes() {
    let values = ["-1.4", "-0.6", "0", "0.3", "0.8", "1.3"];
    for d0 in values {
        for d1 in values {
            for set in ["s", "pc", "pcm"] {
                let out = run(&[
                    "member", "--set", set, "--c", "0", "0", "--d", d0, d1, "--m", "6",
                ]);
                let member = fields(&out.stdout)["member"].clone();
                match out.code {
                    0 => assert_eq!(member, "true"),
                    1 => assert_eq!(member, "false"),
                    code => panic!("exit {code}: {}", out.stderr),
                }
            }
        }
    }
}

#[test]
fn membership_chain_holds_on_command_line() {
    let values = ["-1.2", "-0.4", "0.2", "0.7", "1.1"];
    for d0 in values {
        for d1 in values {
            let code = |set: &str| {
                run(&[
                    "member", "--set", set, "--c", "0.1", "-0.2", "--d", d0, d1, "--m", "12",
                ])
                .code
            };
            let (s, pc, pcm) = (code("s"), code("pc"), code("pcm"));
            if pcm == 0 {
                assert_eq!(pc, 0, "d = ({d0}, {d1})");
            }
            if pc == 0 {
                assert_eq!(s, 0, "d = ({d0}, {d1})");
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let csv = csv.to_str().unwrap();
    let args = [
        "region", "--c", "0", "0", "--m", "5", "--res", "41", "37", "--out", csv,
    ];
    let first = run(&args);
    let first_file = std::fs::read(csv).unwrap();
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first_file, std::fs::read(csv).unwrap());

    let args = [
        "converge", "--p", "2", "1", "0.8", "--m-from", "3", "--m-to", "60",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn converge_writes_same_table_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.csv");
    let args = [
        "converge", "--p", "2", "1", "0.8", "--m-from", "3", "--m-to", "12",
    ];
    let stdout = run(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let out = run(&with_out);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);

    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[0],
        "m,lambda_min_Pm,lambda_min_Rm,frobenius_gap,trig_min"
    );
    assert_eq!(lines.len(), 11);
    let first: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(first[0], 3.0);
    assert!((first[1] + 0.4).abs() < 1e-9);
    assert!((first[4] - 0.0875).abs() < 1e-9);
}

#[test]
fn problem_file_and_inline_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    std::fs::write(
        &pair,
        r#"{"kind": "pair", "n": 2, "c": [0, 0], "d": [0.8, 1]}"#,
    )
    .unwrap();
    let pair = pair.to_str().unwrap();
    let trig = dir.path().join("trig.json");
    std::fs::write(&trig, r#"{"kind": "trig", "p": [2, 1, 0.8]}"#).unwrap();
    let trig = trig.to_str().unwrap();

    let out = run(&["find-m0", "--file", pair, "--max-m", "100"]);
    assert_eq!(out.stdout, "30\n");
    let out = run(&["eig-min", "--kind", "pm", "--m", "3", "--file", trig]);
    assert!((field_f64(&out.stdout, "midpoint") + 0.4).abs() < 1e-9);

    // Inline d replaces the file's d: d = c gives P_3 = 2 I.
    let out = run(&[
        "member", "--set", "pcm", "--file", pair, "--d", "0", "0", "--m", "3",
    ]);
    assert_eq!(out.code, 0);
    assert!((field_f64(&out.stdout, "certificate") - 2.0).abs() < 1e-9);

    // Inline p wins over the pair entirely.
    let out = run(&["trig-min", "--file", pair, "--p", "3", "1"]);
    assert!((field_f64(&out.stdout, "minimum") - 1.0).abs() < 1e-9);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind": "trig", "p": [1], "q": 2}"#).unwrap();
    assert_usage_error(&run(&["trig-min", "--file", bad.to_str().unwrap()]));
}

#[test]
fn digits_flag_controls_precision() {
    let out = run(&["trig-min", "--p", "2", "1", "0.8"]);
    let minimum = &fields(&out.stdout)["minimum"];
    let mantissa = minimum.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17);
    assert!((minimum.parse::<f64>().unwrap() - 0.0875).abs() < 1e-9);

    let out = run(&["trig-min", "--p", "2", "1", "0.8", "--digits", "4"]);
    assert_eq!(fields(&out.stdout)["minimum"], "8.750e-2");
    assert_usage_error(&run(&["trig-min", "--p", "1", "--digits", "0"]));
}

#[test]
fn matrix_formats() {
    let out = run(&[
        "matrix", "--kind", "pm", "--m", "3", "--p", "2", "1", "0.8", "--format", "csv",
    ]);
    let rows: Vec<Vec<f64>> = out
        .stdout
        .lines()
        .map(|l| l.split(',').map(|s| s.parse().unwrap()).collect())
        .collect();
    let expected = [[2.0, 1.5, 2.4], [1.5, 2.0, 1.5], [2.4, 1.5, 2.0]];
    assert_eq!(rows.len(), 3);
    for (row, want) in rows.iter().zip(expected) {
        assert_eq!(row.len(), 3);
        for (a, b) in row.iter().zip(want) {
            assert!((a - b).abs() < 1e-15, "{row:?}");
        }
    }

    let out = run(&["matrix", "--kind", "rm", "--m", "4", "--p", "2", "1", "0.8"]);
    let rows: Vec<Vec<f64>> = out
        .stdout
        .lines()
        .map(|l| l.split_whitespace().map(|s| s.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows[0], vec![2.0, 1.0, 0.8, 0.0]);
    assert_eq!(rows[3], vec![0.0, 0.8, 1.0, 2.0]);
}

#[test]
fn boundary_residuals_at_origin() {
    let out = run(&["boundary", "--d0", "0", "--d1", "0"]);
    assert_eq!(field_f64(&out.stdout, "cubic"), -7200.0);
    assert_eq!(field_f64(&out.stdout, "quartic"), 6_480_000.0);
    let out = run(&["boundary", "--d0", "-0.5", "--d1", "1"]);
    let cubic = -7200.0 - 2520.0 + 882.0 + 4900.0 + 2572.5;
    assert!((field_f64(&out.stdout, "cubic") - cubic).abs() < 1e-9);
}

fn read_csv_classes(path: &Path) -> Vec<(f64, f64, CellClass)> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,class"));
    lines
        .map(|l| {
            let parts: Vec<&str> = l.split(',').collect();
            (
                parts[0].parse().unwrap(),
                parts[1].parse().unwrap(),
                parts[2].parse().unwrap(),
            )
        })
        .collect()
}

fn attr(tag: &str, name: &str) -> String {
    let key = format!(" {name}=\"");
    let start = tag.find(&key).unwrap() + key.len();
    tag[start..].split('"').next().unwrap().to_string()
}

/// Classes decoded from cell rectangles by position, indexed like the CSV.
fn read_svg_classes(path: &Path, spec: &GridSpec) -> Vec<Option<CellClass>> {
    let text = std::fs::read_to_string(path).unwrap();
    let cell = svg_cell_px(spec);
    let (left, top) = svg_origin();
    let mut classes = vec![None; spec.nx * spec.ny];
    for tag in text
        .split('<')
        .filter(|t| t.starts_with("rect class=\"cell\""))
    {
        let x: usize = attr(tag, "x").parse().unwrap();
        let y: usize = attr(tag, "y").parse().unwrap();
        assert_eq!(attr(tag, "width").parse::<usize>().unwrap(), cell);
        let i = (x - left) / cell;
        let j = spec.ny - 1 - (y - top) / cell;
        assert!(
            classes[j * spec.nx + i].is_none(),
            "two rectangles at ({i}, {j})"
        );
        classes[j * spec.nx + i] = CellClass::from_fill(&attr(tag, "fill"));
    }
    classes
}

#[test]
fn csv_and_svg_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], GridSpec); 2] = [
        (
            &["--c", "0", "0", "--m", "4", "--res", "33", "29"],
            GridSpec {
                nx: 33,
                ny: 29,
                ..GridSpec::default()
            },
        ),
        (
            &[
                "--c", "0.1", "0", "0", "--m", "8", "--res", "25", "31", "--axes", "0", "2",
                "--fix", "1=0.2", "--bounds", "-1.2", "1.2", "-2", "2",
            ],
            GridSpec {
                axis_x: 0,
                axis_y: 2,
                bounds: toeplitz_lmi::region::Bounds {
                    x_min: -1.2,
                    x_max: 1.2,
                    y_min: -2.0,
                    y_max: 2.0,
                },
                nx: 25,
                ny: 31,
                fixed_coords: vec![(1, 0.2)],
            },
        ),
    ];
    for (k, (extra, spec)) in cases.into_iter().enumerate() {
        let csv = dir.path().join(format!("r{k}.csv"));
        let svg = dir.path().join(format!("r{k}.svg"));
        for path in [&csv, &svg] {
            let mut args = vec!["region"];
            args.extend_from_slice(extra);
            args.extend(["--out", path.to_str().unwrap()]);
            let out = run(&args);
            assert_eq!(out.code, 0, "{}", out.stderr);
        }
        let from_csv = read_csv_classes(&csv);
        let from_svg = read_svg_classes(&svg, &spec);
        assert_eq!(from_csv.len(), spec.nx * spec.ny);
        for (idx, ((x, y, class), decoded)) in from_csv.iter().zip(&from_svg).enumerate() {
            assert_eq!(*x, spec.x_at(idx % spec.nx));
            assert_eq!(*y, spec.y_at(idx / spec.nx));
            assert_eq!(Some(*class), *decoded, "cell {idx}");
        }
        let lmi = from_csv
            .iter()
            .filter(|c| c.2 == CellClass::LmiInner)
            .count();
        assert!(lmi > 0, "case {k} has no LMI cells");
    }
}

#[test]
fn region_summary_counts_match_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let out = run(&[
        "region",
        "--c",
        "0",
        "0",
        "--m",
        "3",
        "--res",
        "51",
        "51",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let counts = fields(&out.stdout);
    let cells = read_csv_classes(&csv);
    for class in [
        CellClass::LmiInner,
        CellClass::StableOnly,
        CellClass::Unstable,
    ] {
        let n = cells.iter().filter(|c| c.2 == class).count();
        assert_eq!(counts[class.as_str()], n.to_string());
    }
    // Every gray cell lies in the stability triangle.
    for (d0, d1, class) in cells {
        if class == CellClass::LmiInner {
            assert!(d0 < 1.0 && d0 > d1 - 1.0 && d0 > -d1 - 1.0, "({d0}, {d1})");
        }
    }
}
