use std::path::Path;
use std::process::Command;

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qnetcap.h");
    std::fs::read_to_string(path).expect("build script writes the header")
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "qnc_last_error",
        "qnc_string_free",
        "qnc_channel_builtin",
        "qnc_channel_from_json",
        "qnc_channel_free",
        "qnc_holevo_capacity",
        "qnc_mac_region_uniform",
        "qnc_region_inequality",
        "qnc_region_contains",
        "qnc_region_support",
        "qnc_region_to_json",
        "qnc_region_free",
        "qnc_bosonic_capacity",
    ] {
        assert!(h.contains(&format!("{name}(")), "missing {name}");
    }
    assert!(h.contains("typedef struct QncChannel QncChannel;"));
    assert!(h.contains("QNC_STATUS_OK = 0"));
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = tempfile_path("qnc_header_check.c");
    std::fs::write(
        &src,
        "#include \"qnetcap.h\"\nint main(void) { QncChannel *c = 0; return c == 0 ? QNC_STATUS_OK : 1; }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&dir)
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; skipping header compile check"),
    }
}

fn tempfile_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("{}-{name}", std::process::id()))
}
