use std::ffi::{CStr, CString};
use std::ptr;

use nilclean_ffi::*;

fn ring(spec: &str) -> *mut NcRing {
    let spec = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { nc_ring_from_spec(spec.as_ptr(), 4096, &mut out) };
    assert_eq!(status, NcStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(nc_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { nc_string_free(p) };
    s
}

#[test]
fn arithmetic_and_classification() {
    let z6 = ring("Z6");
    unsafe {
        let mut v = 0usize;
        assert_eq!(nc_ring_order(z6, &mut v), NcStatus::Ok);
        assert_eq!(v, 6);
        assert_eq!(nc_ring_add(z6, 4, 5, &mut v), NcStatus::Ok);
        assert_eq!(v, 3);
        assert_eq!(nc_ring_mul(z6, 4, 5, &mut v), NcStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(nc_ring_neg(z6, 1, &mut v), NcStatus::Ok);
        assert_eq!(v, 5);
        let mut b = false;
        assert_eq!(nc_ring_is_commutative(z6, &mut b), NcStatus::Ok);
        assert!(b);
        assert_eq!(nc_ring_is_nil_clean(z6, &mut b), NcStatus::Ok);
        assert!(!b);
        let mut label = ptr::null_mut();
        assert_eq!(nc_ring_label(z6, &mut label), NcStatus::Ok);
        assert_eq!(take_string(label), "Z6");
        nc_ring_free(z6);
    }
}

#[test]
fn nil_index_and_lifting() {
    let z8 = ring("Z8");
    unsafe {
        let mut k = 0u32;
        assert_eq!(nc_ring_nil_index(z8, 2, &mut k), NcStatus::Ok);
        assert_eq!(k, 3);
        assert_eq!(nc_ring_nil_index(z8, 3, &mut k), NcStatus::Ok);
        assert_eq!(k, 0);
        let mut e = 0usize;
        assert_eq!(nc_lift_idempotent(z8, 3, &mut e), NcStatus::Ok);
        assert_eq!(e, 1);
        nc_ring_free(z8);
    }
    let z6 = ring("Z6");
    unsafe {
        let mut e = 0usize;
        assert_eq!(
            nc_lift_idempotent(z6, 2, &mut e),
            NcStatus::PreconditionViolated
        );
        assert!(last_error().contains("not almost idempotent"));
        nc_ring_free(z6);
    }
}

#[test]
fn ideals_across_the_boundary() {
    let z6 = ring("Z6");
    unsafe {
        let mut ideal = ptr::null_mut();
        let gens = [2usize];
        assert_eq!(
            nc_ideal_generated(z6, gens.as_ptr(), 1, &mut ideal),
            NcStatus::Ok
        );
        let mut len = 0usize;
        assert_eq!(nc_ideal_len(ideal, &mut len), NcStatus::Ok);
        assert_eq!(len, 3);

        let mut small = [0usize; 2];
        let mut written = 0usize;
        assert_eq!(
            nc_ideal_members(ideal, small.as_mut_ptr(), small.len(), &mut written),
            NcStatus::BufferTooSmall
        );
        assert_eq!(written, 3);
        let mut buf = [0usize; 8];
        assert_eq!(
            nc_ideal_members(ideal, buf.as_mut_ptr(), buf.len(), &mut written),
            NcStatus::Ok
        );
        assert_eq!(&buf[..written], &[0, 2, 4]);

        let mut holds = true;
        let nil_clean = CString::new("nil-clean").unwrap();
        assert_eq!(
            nc_ideal_check(ideal, nil_clean.as_ptr(), &mut holds),
            NcStatus::Ok
        );
        assert!(!holds);
        let clean = CString::new("clean").unwrap();
        assert_eq!(
            nc_ideal_check(ideal, clean.as_ptr(), &mut holds),
            NcStatus::Ok
        );
        assert!(holds);
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(
            nc_ideal_check(ideal, bogus.as_ptr(), &mut holds),
            NcStatus::BadParameter
        );
        nc_ideal_free(ideal);
        nc_ring_free(z6);
    }
}

#[test]
fn decompositions_as_json() {
    let z6 = ring("Z6");
    unsafe {
        let kind = CString::new("clean").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(
            nc_decompose_json(z6, 2, kind.as_ptr(), &mut out),
            NcStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        let pairs: Vec<(u64, u64)> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|d| {
                (
                    d["idempotent"].as_u64().unwrap(),
                    d["second"].as_u64().unwrap(),
                )
            })
            .collect();
        assert_eq!(pairs, vec![(1, 1), (3, 5)]);
        nc_ring_free(z6);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        let bad = CString::new("Zx").unwrap();
        assert_eq!(
            nc_ring_from_spec(bad.as_ptr(), 4096, &mut out),
            NcStatus::Parse
        );
        assert!(last_error().contains("position 1"));
        assert!(out.is_null());

        let big = CString::new("Z64xZ64xZ2").unwrap();
        assert_eq!(
            nc_ring_from_spec(big.as_ptr(), 4096, &mut out),
            NcStatus::CapExceeded
        );
        assert_eq!(
            nc_ring_from_spec(ptr::null(), 4096, &mut out),
            NcStatus::NullPointer
        );

        let z4 = ring("Z4");
        let mut v = 0usize;
        assert_eq!(nc_ring_add(z4, 9, 0, &mut v), NcStatus::OutOfRange);
        assert_eq!(
            nc_ring_add(z4, 1, 1, ptr::null_mut()),
            NcStatus::NullPointer
        );
        assert_eq!(nc_ring_add(z4, 1, 1, &mut v), NcStatus::Ok);
        assert_eq!(last_error(), "");
        nc_ring_free(z4);
        nc_ring_free(ptr::null_mut());
        nc_string_free(ptr::null_mut());
    }
}

#[test]
fn table_import() {
    let good = r#"{"order":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"zero":0,"one":1}"#;
    let broken = r#"{"order":2,"add":[[0,1],[1,0]],"mul":[[0,0],[1,1]],"zero":0,"one":1}"#;
    unsafe {
        let mut out = ptr::null_mut();
        let json = CString::new(good).unwrap();
        assert_eq!(
            nc_ring_from_table_json(json.as_ptr(), &mut out),
            NcStatus::Ok
        );
        let mut b = false;
        assert_eq!(nc_ring_is_nil_clean(out, &mut b), NcStatus::Ok);
        assert!(b);
        nc_ring_free(out);
        let json = CString::new(broken).unwrap();
        assert_eq!(
            nc_ring_from_table_json(json.as_ptr(), &mut out),
            NcStatus::AxiomFailure
        );
    }
}

#[test]
fn theorem_report() {
    let ids = [CString::new("nilindex_growth").unwrap()];
    let ptrs: Vec<_> = ids.iter().map(|s| s.as_ptr()).collect();
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            nc_theorems_json(ptrs.as_ptr(), ptrs.len(), &mut out),
            NcStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v[0]["id"], "nilindex_growth");
        assert_eq!(v[0]["verdict"], "verified");

        let unknown = [CString::new("nope").unwrap()];
        let ptrs: Vec<_> = unknown.iter().map(|s| s.as_ptr()).collect();
        assert_eq!(
            nc_theorems_json(ptrs.as_ptr(), 1, &mut out),
            NcStatus::BadParameter
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/nilclean.h");
    for name in [
        "nc_last_error_message",
        "nc_string_free",
        "nc_ring_from_spec",
        "nc_ring_from_table_json",
        "nc_ring_free",
        "nc_ring_order",
        "nc_ring_label",
        "nc_ring_add",
        "nc_ring_mul",
        "nc_ring_neg",
        "nc_ring_is_commutative",
        "nc_ring_is_nil_clean",
        "nc_ring_nil_index",
        "nc_lift_idempotent",
        "nc_decompose_json",
        "nc_ideal_generated",
        "nc_ideal_free",
        "nc_ideal_len",
        "nc_ideal_members",
        "nc_ideal_check",
        "nc_theorems_json",
        "typedef struct NcRing NcRing",
        "NC_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
