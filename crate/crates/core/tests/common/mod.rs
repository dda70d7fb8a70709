//! Golden CLI cases shared by the integration tests and the acceptance run.

#![allow(dead_code)]

use std::path::PathBuf;

use sheafsym::cli::run_command;

pub struct GoldenCase {
    pub name: &'static str,
    pub command: &'static str,
    pub fixture: &'static str,
    pub extra: &'static [&'static str],
    pub code: i32,
}

const fn case(
    name: &'static str,
    command: &'static str,
    fixture: &'static str,
    extra: &'static [&'static str],
    code: i32,
) -> GoldenCase {
    GoldenCase { name, command, fixture, extra, code }
}

const JSON: &[&str] = &["--output", "json"];

pub const CASES: &[GoldenCase] = &[
    case("darboux_ok", "darboux", "darboux_ok.json", JSON, 0),
    case("darboux_ok_seeded", "darboux", "darboux_ok.json", &["--output", "json", "--seed", "9"], 0),
    case("darboux_ok_text", "darboux", "darboux_ok.json", &[], 0),
    case("darboux_degenerate", "darboux", "darboux_degenerate.json", JSON, 1),
    case("darboux_not_skew", "darboux", "darboux_not_skew.json", JSON, 1),
    case("darboux_bad_json", "darboux", "bad_json.json", JSON, 2),
    case("normal_form_ok", "normal-form", "normal_form_ok.json", &["--output", "json", "--seed", "1"], 0),
    case("normal_form_varying", "normal-form", "normal_form_varying.json", JSON, 1),
    case("normal_form_varying_text", "normal-form", "normal_form_varying.json", &[], 1),
    case("normal_form_bad_json", "normal-form", "bad_json.json", JSON, 2),
    case("check_symplectic_ok", "check-symplectic", "symplectic_ok.json", &["--output", "json", "--seed", "2"], 0),
    case("check_symplectic_forms", "check-symplectic", "symplectic_forms.json", JSON, 0),
    case("check_symplectic_no", "check-symplectic", "symplectic_no.json", JSON, 1),
    case("check_symplectic_not_square", "check-symplectic", "charpoly_not_square.json", JSON, 2),
    case("charpoly_ok", "charpoly", "charpoly_ok.json", &["--output", "json", "--seed", "4"], 0),
    case("charpoly_ok_text", "charpoly", "charpoly_ok.json", &[], 0),
    case("charpoly_not_square", "charpoly", "charpoly_not_square.json", JSON, 2),
    case("charpoly_missing_field", "charpoly", "darboux_not_skew.json", JSON, 2),
    case("eigen_ok", "eigen", "eigen_ok.json", JSON, 0),
    case("eigen_irrational", "eigen", "eigen_irrational.json", JSON, 1),
    case("eigen_not_square", "eigen", "charpoly_not_square.json", JSON, 2),
    case("sheaf_check_function", "sheaf-check", "sheaf_function.json", JSON, 0),
    case("sheaf_check_constant", "sheaf-check", "sheaf_constant.json", JSON, 1),
    case("sheaf_check_constant_text", "sheaf-check", "sheaf_constant.json", &[], 1),
    case("sheaf_check_bad_kind", "sheaf-check", "sheaf_bad_kind.json", JSON, 2),
    case("wedge_ok", "wedge", "wedge_ok.json", &["--output", "json", "--seed", "5"], 0),
    case("wedge_overflow", "wedge", "wedge_overflow.json", JSON, 0),
    case("wedge_rank_mismatch", "wedge", "wedge_rank_mismatch.json", JSON, 2),
];

pub fn tests_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn argv(case: &GoldenCase) -> Vec<String> {
    let fixture = tests_dir().join("fixtures").join(case.fixture);
    let mut args = vec![
        "sheafsym".to_string(),
        case.command.to_string(),
        "--input".to_string(),
        fixture.to_string_lossy().into_owned(),
    ];
    args.extend(case.extra.iter().map(|s| s.to_string()));
    args
}

pub fn golden_path(case: &GoldenCase) -> PathBuf {
    tests_dir().join("golden").join(format!("{}.out", case.name))
}

/// Runs one case and compares exit code and output byte-for-byte with the
/// stored golden file. `UPDATE_GOLDEN=1` rewrites the file instead.
pub fn check_case(case: &GoldenCase) -> Result<(), String> {
    let outcome = run_command(argv(case));
    let path = golden_path(case);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &outcome.stdout).map_err(|e| e.to_string())?;
    }
    if outcome.code != case.code {
        return Err(format!("{}: exit code {} (expected {})", case.name, outcome.code, case.code));
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if outcome.stdout != expected {
        return Err(format!("{}: output differs from {}", case.name, path.display()));
    }
    Ok(())
}
