mod common;

use std::fs;
use std::process::{Command, Output};

use common::phantom;
use fundus::io::{write_rgb, OutputFormat};
use fundus_core::Rgb8Image;

fn fundus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fundus")).args(args).output().unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn membership_curve_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m30.csv");
    let res = fundus(&["membership", "--mean", "30", "--out", path(&out)]);
    assert_eq!(res.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,very_dark,dark,medium,bright,very_bright");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 201);
    for row in rows {
        for cell in row.split(',').skip(1) {
            let v: f64 = cell.parse().unwrap();
            assert!(v > 0.0 && v <= 1.0, "{row}");
        }
    }
}

#[test]
fn membership_rejects_mean_out_of_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let res = fundus(&["membership", "--mean", "2", "--out", path(&out)]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path());
    let bad_method = fundus(&["enhance", "--input", d, "--out-dir", d, "--method", "sharpen"]);
    assert_eq!(bad_method.status.code(), Some(2));
    let bad_tiles = fundus(&["enhance", "--input", d, "--out-dir", d, "--method", "he", "--tiles", "8by8"]);
    assert_eq!(bad_tiles.status.code(), Some(2));
    let zero_tiles = fundus(&["compare", "--input", d, "--out-dir", d, "--metrics", "m.csv", "--tiles", "0x8"]);
    assert_eq!(zero_tiles.status.code(), Some(2));
    let missing = fundus(&["compare", "--input", "/no/such/dir", "--out-dir", d, "--metrics", "m.csv"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_hue = fundus(&["enhance", "--input", d, "--out-dir", d, "--method", "full", "--hue", "400"]);
    assert_eq!(bad_hue.status.code(), Some(2));
}

#[test]
fn empty_directory_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in");
    fs::create_dir(&input).unwrap();
    let csv = dir.path().join("m.csv");
    let res = fundus(&[
        "compare",
        "--input",
        path(&input),
        "--out-dir",
        path(&dir.path().join("out")),
        "--metrics",
        path(&csv),
    ]);
    assert_eq!(res.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 1);
}

#[test]
fn per_image_error_exits_1_with_full_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in");
    fs::create_dir(&input).unwrap();
    let flat = Rgb8Image::new(32, 32, vec![[100, 100, 100]; 1024]).unwrap();
    write_rgb(&input.join("flat.png"), &flat, OutputFormat::Png).unwrap();
    let csv = dir.path().join("m.csv");
    let res = fundus(&[
        "compare",
        "--input",
        path(&input),
        "--out-dir",
        path(&dir.path().join("out")),
        "--metrics",
        path(&csv),
    ]);
    assert_eq!(res.status.code(), Some(1));
    let text = fs::read_to_string(&csv).unwrap();
    let statuses: Vec<(String, bool)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            (cells[1].to_owned(), cells[8].starts_with("error"))
        })
        .collect();
    assert_eq!(
        statuses,
        [
            ("grayscale".to_owned(), false),
            ("he".to_owned(), false),
            ("fce".to_owned(), true),
            ("clahe".to_owned(), false),
            ("fce_clahe".to_owned(), true),
            ("full".to_owned(), true),
        ]
    );
}

#[test]
fn enhance_with_flags_and_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.png");
    write_rgb(&input, &phantom(565, 584, 0, true).image, OutputFormat::Png).unwrap();
    let out = dir.path().join("out");
    let csv = dir.path().join("m.csv");
    let res = fundus(&[
        "enhance",
        "--input",
        path(&input),
        "--method",
        "fce_clahe",
        "--out-dir",
        path(&out),
        "--w1",
        "0.5",
        "--w2",
        "0.5",
        "--c",
        "-102",
        "--clip-limit",
        "3.0",
        "--tiles",
        "4x6",
        "--format",
        "ppm",
        "--metrics",
        path(&csv),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(out.join("p.pgm").is_file());
    let text = fs::read_to_string(&csv).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "p");
    assert_eq!(row[1], "fce_clahe");
    let entropy: f64 = row[4].parse().unwrap();
    assert!((0.0..=8.0).contains(&entropy));
    assert_eq!(row[6], "");
    assert_eq!(row[8], "ok");
}
