use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use comfort_ffi::*;

fn parse(text: &str) -> *mut ComfortGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { comfort_graph_parse(c.as_ptr(), &mut g) },
        ComfortStatus::Ok
    );
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(comfort_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn graph_handles_and_eccentricities() {
    let g = parse("6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    unsafe {
        assert_eq!(comfort_graph_vertex_count(g), 6);
        assert_eq!(comfort_graph_edge_count(g), 5);
        let mut ecc = [0u32; 6];
        let (mut r, mut d) = (0, 0);
        assert_eq!(
            comfort_graph_eccentricities(g, ecc.as_mut_ptr(), 6, &mut r, &mut d),
            ComfortStatus::Ok
        );
        assert_eq!(ecc, [5, 4, 3, 3, 4, 5]);
        assert_eq!((r, d), (3, 5));
        assert_eq!(
            comfort_graph_eccentricities(g, ecc.as_mut_ptr(), 5, ptr::null_mut(), ptr::null_mut()),
            ComfortStatus::BufferTooSmall
        );
        comfort_graph_free(g);
        assert_eq!(comfort_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn parse_errors_carry_messages() {
    let c = CString::new("3 1\n0 7\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { comfort_graph_parse(c.as_ptr(), &mut g) },
        ComfortStatus::Parse
    );
    assert!(g.is_null());
    assert!(last_error().contains("line 2"));
    assert_eq!(
        unsafe { comfort_graph_parse(ptr::null(), &mut g) },
        ComfortStatus::NullPointer
    );
}

#[test]
fn hicom_through_the_abi() {
    let g = parse("7 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n");
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(comfort_hicom(g, 3, 2, &mut t), ComfortStatus::Ok);
        let mut members = [0usize; 7];
        assert_eq!(comfort_team_len(t), 5);
        assert_eq!(
            comfort_team_members(t, members.as_mut_ptr(), 7),
            ComfortStatus::Ok
        );
        assert_eq!(&members[..5], &[1, 2, 3, 4, 5]);
        let mut rep = std::mem::zeroed::<ComfortReport>();
        assert_eq!(comfort_team_report(t, &mut rep), ComfortStatus::Ok);
        assert_eq!(rep.verdict, ComfortVerdict::HighlyComfortable);
        assert_eq!(
            (rep.d1, rep.domination_radius, rep.induced_diameter),
            (4, 1, 4)
        );

        let mut json = ptr::null_mut();
        assert_eq!(comfort_team_json(t, &mut json), ComfortStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["k"], 1);
        assert_eq!(v["team"], serde_json::json!([1, 2, 3, 4, 5]));
        comfort_string_free(json);
        comfort_team_free(t);

        assert_eq!(
            comfort_hicom(g, 1, 1, &mut t),
            ComfortStatus::InvalidParameter
        );
        comfort_graph_free(g);
    }
}

#[test]
fn infeasible_and_disconnected_statuses() {
    let star = parse("7 6\n0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n");
    let split = parse("4 2\n0 1\n2 3\n");
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(comfort_hicom(star, 3, 2, &mut t), ComfortStatus::Infeasible);
        assert_eq!(
            comfort_hicom(split, 3, 2, &mut t),
            ComfortStatus::Disconnected
        );
        comfort_graph_free(star);
        comfort_graph_free(split);
    }
}

#[test]
fn check_hc_on_arbitrary_teams() {
    let edges: [usize; 12] = [0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 0];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            comfort_graph_from_edges(6, edges.as_ptr(), 6, &mut g),
            ComfortStatus::Ok
        );
        let mut rep = std::mem::zeroed::<ComfortReport>();
        let team = [5usize, 0, 1];
        assert_eq!(
            comfort_check_hc(g, team.as_ptr(), 3, 3, 2, &mut rep),
            ComfortStatus::Ok
        );
        assert_eq!(rep.verdict, ComfortVerdict::HighlyComfortable);
        let split = [0usize, 3];
        assert_eq!(
            comfort_check_hc(g, split.as_ptr(), 2, 3, 2, &mut rep),
            ComfortStatus::Ok
        );
        assert!(!rep.is_connected);
        assert_eq!(rep.induced_diameter, u32::MAX);
        assert_eq!(rep.verdict, ComfortVerdict::None);
        let bad = [9usize];
        assert_eq!(
            comfort_check_hc(g, bad.as_ptr(), 1, 3, 2, &mut rep),
            ComfortStatus::InvalidParameter
        );
        assert_eq!(
            comfort_check_hc(g, team.as_ptr(), 0, 3, 2, &mut rep),
            ComfortStatus::InvalidParameter
        );
        comfort_graph_free(g);
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header_and_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libcomfort_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("comfort_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "exit {:?}: {}",
        run.status,
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "0 1 5\n");
}
