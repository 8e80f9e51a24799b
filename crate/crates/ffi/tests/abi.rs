use std::ffi::{CStr, CString};
use std::ptr;

use vw_ffi::*;

fn last_error() -> String {
    let p = vw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(s: &str) -> (VwStatus, *mut VwDiagram) {
    let c = CString::new(s).unwrap();
    let mut d = ptr::null_mut();
    let status = unsafe { vw_diagram_parse(c.as_ptr(), &mut d) };
    (status, d)
}

#[test]
fn diagram_round_trip_and_bigrading() {
    let text = "3;chords=1-2,2-3;bottom=1;top=0,2,0";
    let (status, d) = parse(text);
    assert_eq!(status, VwStatus::Ok);
    unsafe {
        let s = vw_diagram_serialize(d);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), text);
        vw_string_free(s);
        let (mut i, mut j) = (0, 0);
        assert_eq!(vw_diagram_bigrading(d, &mut i, &mut j), VwStatus::Ok);
        // two chords, one bottom and two top asterisks; three points plus two tops
        assert_eq!((i, j), (5, 5));
        vw_diagram_free(d);
    }
    assert!(vw_last_error_message().is_null());
}

#[test]
fn bad_input_sets_codes_and_messages() {
    let (status, d) = parse("2;chords=1-2");
    assert_eq!(status, VwStatus::Parse);
    assert!(d.is_null());
    assert!(last_error().contains("malformed"));
    // a cycle of chords is not a forest
    let (status, _) = parse("3;chords=1-2,1-3,2-3;bottom=;top=0,0,0");
    assert_eq!(status, VwStatus::InvalidDiagram);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vw_diagram_parse(ptr::null(), &mut out) }, VwStatus::NullPointer);
    assert!(unsafe { vw_diagram_serialize(ptr::null()) }.is_null());
    unsafe { vw_diagram_free(ptr::null_mut()) };
}

fn homology(e: *mut VwEngine, complex: &str, parity: VwParity, i: usize, j: usize, ring: &str) -> Result<(usize, Vec<i64>), VwStatus> {
    let (c, r) = (CString::new(complex).unwrap(), CString::new(ring).unwrap());
    let mut g = ptr::null_mut();
    let status = unsafe { vw_homology(e, c.as_ptr(), parity, i, j, r.as_ptr(), false, &mut g) };
    if status != VwStatus::Ok {
        return Err(status);
    }
    unsafe {
        let torsion = (0..vw_group_torsion_len(g))
            .map(|k| {
                let mut t = 0;
                assert_eq!(vw_group_torsion_at(g, k, &mut t), VwStatus::Ok);
                t
            })
            .collect();
        let rank = vw_group_free_rank(g);
        vw_group_free(g);
        Ok((rank, torsion))
    }
}

#[test]
fn homology_queries() {
    let e = vw_engine_new(0);
    assert_eq!(homology(e, "T", VwParity::Odd, 1, 2, "Z"), Ok((1, vec![])));
    assert_eq!(homology(e, "T", VwParity::Even, 2, 3, "Z"), Ok((0, vec![2])));
    assert_eq!(homology(e, "T", VwParity::Odd, 4, 5, "Z"), Ok((0, vec![2])));
    assert_eq!(homology(e, "T", VwParity::Even, 2, 3, "Fp:2"), Ok((1, vec![])));
    assert_eq!(homology(e, "X", VwParity::Odd, 1, 2, "Z"), Err(VwStatus::Parse));
    assert_eq!(homology(e, "T", VwParity::Odd, 1, 2, "Fp:4"), Err(VwStatus::Parse));
    unsafe { vw_engine_free(e) };
    let tiny = vw_engine_new(1);
    assert_eq!(homology(tiny, "Tss", VwParity::Odd, 3, 4, "Z"), Err(VwStatus::ResourceLimit));
    assert!(last_error().contains("resource limit"));
    unsafe { vw_engine_free(tiny) };
}

#[test]
fn quantum_binomials() {
    let q = |k, n, q| {
        let mut out = 0;
        let s = unsafe { vw_quantum_binomial(k, n, q, &mut out) };
        (s, out)
    };
    assert_eq!(q(1, 1, -1), (VwStatus::Ok, 0));
    assert_eq!(q(2, 2, -1), (VwStatus::Ok, 2));
    assert_eq!(q(2, 1, 1), (VwStatus::Ok, 3));
    assert_eq!(q(2, 1, 0).0, VwStatus::InvalidArgument);
    assert_eq!(q(40, 40, 1).0, VwStatus::Overflow);
}

#[test]
fn generated_header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/vw.h")).unwrap();
    for name in [
        "vw_diagram_parse", "vw_diagram_free", "vw_diagram_serialize", "vw_diagram_bigrading", "vw_engine_new",
        "vw_homology", "vw_group_torsion_at", "vw_quantum_binomial", "vw_last_error_message", "VW_STATUS_RESOURCE_LIMIT",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    if let Ok(cc) = std::process::Command::new("cc").arg("--version").output() {
        if cc.status.success() {
            let dir = tempfile_dir();
            let src = dir.join("use.c");
            std::fs::write(&src, "#include \"vw.h\"\nint main(void) { VwDiagram *d = 0; return vw_diagram_parse(\"1;chords=;bottom=;top=1\", &d) == VW_STATUS_OK ? 0 : 1; }\n").unwrap();
            let out = std::process::Command::new("cc")
                .args(["-fsyntax-only", "-Wall", "-Werror", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
                .arg(&src)
                .output()
                .unwrap();
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        }
    }
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("vw-ffi-header");
    std::fs::create_dir_all(&d).unwrap();
    d
}
