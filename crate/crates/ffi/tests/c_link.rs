//! Compile and run the C demo against the generated header and the static
//! library, proving the ABI surface works from C. Skips (with a note) when
//! no C compiler is available.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_demo_compiles_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler ({cc}) on this machine");
        return;
    }

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    let demo = manifest.join("examples").join("capi_demo.c");
    // Tests run from target/debug/deps; the static library sits two levels up.
    let static_lib = PathBuf::from(std::env::current_exe().unwrap())
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("libhadamard_sojourn_ffi.a");
    assert!(
        static_lib.exists(),
        "static library not found at {}",
        static_lib.display()
    );

    let out_dir = std::env::temp_dir().join(format!("hws-capi-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("capi_demo");

    let compile = Command::new(&cc)
        .arg(&demo)
        .arg("-I")
        .arg(&include_dir)
        .arg(&static_lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("compiler invocation");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("demo run");
    assert!(
        run.status.success(),
        "demo failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("c-api smoke ok"));

    let _ = std::fs::remove_dir_all(&out_dir);
}
