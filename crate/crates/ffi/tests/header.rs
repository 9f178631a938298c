use std::path::Path;
use std::process::Command;

fn exported_names(src: &str) -> Vec<String> {
    src.lines()
        .filter_map(|l| {
            let l = l.trim_start();
            let rest = l
                .strip_prefix("pub unsafe extern \"C\" fn ")
                .or_else(|| l.strip_prefix("pub extern \"C\" fn "))?;
            Some(rest.split('(').next()?.to_string())
        })
        .collect()
}

#[test]
fn header_declares_every_export() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/fpfun.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let names = exported_names(&src);
    assert!(names.len() >= 15, "{names:?}");
    for n in &names {
        assert!(header.contains(&format!("{n}(")), "{n} missing from the header");
    }
    for t in ["typedef struct FpfAlgebra FpfAlgebra;", "FPF_STATUS_OK = 0", "FPF_STATUS_INTERNAL = 6"] {
        assert!(header.contains(t), "{t}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = tempfile::tempdir().unwrap();
    let main = tmp.path().join("main.c");
    std::fs::write(
        &main,
        "#include \"fpfun.h\"\nint main(void) { FpfAlgebra *a = 0; return fpf_algebra_builtin(\"k2x2\", 2, &a) == FPF_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let out = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&main)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
