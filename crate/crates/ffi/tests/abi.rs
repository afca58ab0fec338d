use std::ffi::{CStr, CString};
use std::ptr;

use condint_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(condint_last_error_message()) }.to_str().unwrap().to_owned()
}

fn family(n: usize, k: usize, sets: &[&[u32]]) -> *mut CondintFamily {
    let flat: Vec<u32> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    let mut out = ptr::null_mut();
    let status = unsafe { condint_family_new(n, k, flat.as_ptr(), sets.len(), &mut out) };
    assert_eq!(status, CondintStatus::Ok, "{}", last_error());
    out
}

#[test]
fn family_round_trip_through_text() {
    let f = family(5, 3, &[&[3, 2, 1], &[1, 4, 5], &[1, 2, 3]]);
    unsafe {
        assert_eq!(condint_family_len(f), 2);
        assert_eq!((condint_family_n(f), condint_family_k(f)), (5, 3));
        let mut buf = [0u32; 3];
        assert_eq!(condint_family_member(f, 1, buf.as_mut_ptr(), 3), CondintStatus::Ok);
        assert_eq!(buf, [1, 4, 5]);
        assert_eq!(condint_family_member(f, 2, buf.as_mut_ptr(), 3), CondintStatus::InvalidArgument);
        assert_eq!(condint_family_member(f, 0, buf.as_mut_ptr(), 2), CondintStatus::BufferTooSmall);

        let mut text = ptr::null_mut();
        assert_eq!(condint_family_serialize(f, &mut text), CondintStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "5 3\n1 2 3\n1 4 5\n");
        let mut back = ptr::null_mut();
        assert_eq!(condint_family_parse(text, &mut back), CondintStatus::Ok);
        assert_eq!(condint_family_len(back), 2);
        condint_string_free(text);
        condint_family_free(back);
        condint_family_free(f);
    }
}

#[test]
fn construction_errors() {
    let mut out = ptr::null_mut();
    let bad = [1u32, 2, 7];
    unsafe {
        assert_eq!(condint_family_new(6, 3, bad.as_ptr(), 1, &mut out), CondintStatus::InvalidArgument);
        assert!(last_error().contains('7'));
        assert_eq!(condint_family_new(6, 3, ptr::null(), 1, &mut out), CondintStatus::NullPointer);
        let text = CString::new("6 3\n1 x 3\n").unwrap();
        assert_eq!(condint_family_parse(text.as_ptr(), &mut out), CondintStatus::ParseError);
        assert!(last_error().contains("line 2"));
        assert_eq!(condint_family_parse(ptr::null(), &mut out), CondintStatus::NullPointer);
        assert_eq!(condint_family_len(ptr::null()), 0);
        condint_family_free(ptr::null_mut());
    }
}

#[test]
fn violation_witness_is_copied_out() {
    let f = family(6, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]);
    let k4 = family(4, 3, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
    let mut buf = [0u32; 9];
    unsafe {
        assert_eq!(condint_find_violation(f, 3, 6, buf.as_mut_ptr(), 9), CondintStatus::PropertyFalse);
        assert_eq!(buf, [1, 2, 3, 1, 4, 5, 2, 4, 6]);
        assert_eq!(condint_find_violation(f, 3, 6, buf.as_mut_ptr(), 8), CondintStatus::BufferTooSmall);
        assert_eq!(condint_find_violation(k4, 3, 6, ptr::null_mut(), 0), CondintStatus::Ok);
        assert!(last_error().is_empty());
        assert_eq!(condint_find_violation(k4, 1, 6, ptr::null_mut(), 0), CondintStatus::InvalidArgument);

        let mut ci = true;
        assert_eq!(condint_is_conditionally_intersecting(f, 3, 6, &mut ci), CondintStatus::Ok);
        assert!(!ci);
        assert_eq!(condint_is_conditionally_intersecting(f, 3, 5, &mut ci), CondintStatus::Ok);
        assert!(ci);
        condint_family_free(f);
        condint_family_free(k4);
    }
}

#[test]
fn decomposition_certificate_round_trip() {
    // K4 on {1..4} plus the full star with core 5 on {5..9}.
    let mut sets: Vec<Vec<u32>> = vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]];
    for a in 6..=9 {
        for b in a + 1..=9 {
            sets.push(vec![5, a, b]);
        }
    }
    let refs: Vec<&[u32]> = sets.iter().map(|s| s.as_slice()).collect();
    let f = family(9, 3, &refs);
    unsafe {
        let mut dec = ptr::null_mut();
        assert_eq!(condint_decompose(f, 3, &mut dec), CondintStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(condint_decomposition_to_json(dec, &mut json), CondintStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(condint_decomposition_from_json(json, &mut back), CondintStatus::Ok);
        let mut passed = false;
        assert_eq!(condint_verify_decomposition(f, back, 3, 6, &mut passed), CondintStatus::Ok);
        assert!(passed);

        // Verifying against a different family fails a clause.
        let other = family(9, 3, &[&[1, 2, 3]]);
        assert_eq!(condint_verify_decomposition(other, back, 3, 6, &mut passed), CondintStatus::PropertyFalse);
        assert!(!passed);
        assert!(last_error().starts_with("clause"));

        let garbage = CString::new("{").unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(condint_decomposition_from_json(garbage.as_ptr(), &mut none), CondintStatus::ParseError);

        condint_string_free(json);
        condint_decomposition_free(dec);
        condint_decomposition_free(back);
        condint_family_free(other);
        condint_family_free(f);
    }
}

#[test]
fn decompose_rejects_clusters() {
    let f = family(6, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]);
    let mut dec = ptr::null_mut();
    unsafe {
        assert_eq!(condint_decompose(f, 3, &mut dec), CondintStatus::PropertyFalse);
        assert!(dec.is_null());
        assert_eq!(condint_decompose(f, 2, &mut dec), CondintStatus::InvalidArgument);
        condint_family_free(f);
    }
}

#[test]
fn searches() {
    let mut summary = CondintSearchSummary::default();
    let mut witness = ptr::null_mut();
    unsafe {
        let status = condint_max_family(5, 3, 3, 6, CondintEnumerate::OneWitness, 1, 0, &mut summary, &mut witness);
        assert_eq!(status, CondintStatus::Ok);
        assert_eq!((summary.h, summary.upper_bound, summary.certified), (6, 6, true));
        assert_eq!(summary.witness_count, 1);
        assert_eq!(condint_family_len(witness), 6);
        condint_family_free(witness);

        let status = condint_max_family(5, 3, 3, 6, CondintEnumerate::AllMaximum, 2, 0, &mut summary, ptr::null_mut());
        assert_eq!(status, CondintStatus::Ok);
        assert_eq!(summary.witness_count, 5);

        let status = condint_max_family(6, 3, 3, 6, CondintEnumerate::ValueOnly, 1, 2, &mut summary, &mut witness);
        assert_eq!(status, CondintStatus::Inconclusive);
        assert!(!summary.certified);
        assert!(summary.h <= summary.upper_bound);
        assert!(witness.is_null());

        let status = condint_max_nonintersecting(8, 3, CondintEnumerate::ValueOnly, 1, 0, &mut summary, ptr::null_mut());
        assert_eq!(status, CondintStatus::Ok);
        assert!(summary.h >= 7);

        let status = condint_max_family(6, 3, 4, 6, CondintEnumerate::ValueOnly, 1, 0, &mut summary, ptr::null_mut());
        assert_eq!(status, CondintStatus::InvalidArgument);
        let status = condint_max_family(6, 3, 3, 6, CondintEnumerate::ValueOnly, 1, 0, ptr::null_mut(), ptr::null_mut());
        assert_eq!(status, CondintStatus::NullPointer);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/condint.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 18);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for ty in ["CondintStatus", "CondintEnumerate", "CondintSearchSummary", "CondintFamily", "CondintDecomposition"] {
        assert!(header.contains(ty), "{ty} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let dir = std::env::temp_dir().join(format!("condint-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"condint.h\"\nint main(void) { CondintSearchSummary s = {0}; return (int)s.h + CONDINT_STATUS_OK; }\n",
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include])
        .arg(&src)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "header failed to compile"),
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
    }
    std::fs::remove_dir_all(&dir).ok();
}
