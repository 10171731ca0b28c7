//! Plan bundles and the table sweep against golden/. `RINGLOCK_BLESS=1` rewrites them.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

const PLANS: [u64; 6] = [2, 7, 16, 22, 73, 81];

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn bless() -> bool {
    std::env::var("RINGLOCK_BLESS").is_ok_and(|v| v == "1")
}

fn ringlock(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_ringlock")).args(args).env_remove("RINGLOCK_BUDGET").output().unwrap();
    (o.status.code(), String::from_utf8(o.stdout).unwrap())
}

fn names(dir: &Path) -> BTreeSet<String> {
    fs::read_dir(dir).map_or_else(|_| BTreeSet::new(), |it| it.map(|e| e.unwrap().file_name().into_string().unwrap()).collect())
}

#[test]
fn plan_bundles_match() {
    for n in PLANS {
        let tmp = tempfile::tempdir().unwrap();
        let (code, _) = ringlock(&["plan", &n.to_string(), "--out", tmp.path().to_str().unwrap()]);
        assert!(matches!(code, Some(0 | 3)), "plan {n} exited {code:?}");
        let want_dir = golden().join(n.to_string());
        if bless() {
            let _ = fs::remove_dir_all(&want_dir);
            fs::create_dir_all(&want_dir).unwrap();
            for f in names(tmp.path()) {
                fs::copy(tmp.path().join(&f), want_dir.join(&f)).unwrap();
            }
            continue;
        }
        assert_eq!(names(tmp.path()), names(&want_dir), "file set for {n}");
        for f in names(&want_dir) {
            let got = fs::read_to_string(tmp.path().join(&f)).unwrap();
            let want = fs::read_to_string(want_dir.join(&f)).unwrap();
            assert!(got == want, "{n}/{f} differs from golden");
        }
        let (code, out) = ringlock(&["verify", want_dir.to_str().unwrap()]);
        assert_eq!(code, Some(0), "golden {n} no longer verifies: {out}");
    }
}

#[test]
fn table_matches() {
    let (code, out) = ringlock(&["table", "2", "101"]);
    assert_eq!(code, Some(0));
    let path = golden().join("table.txt");
    if bless() {
        fs::create_dir_all(golden()).unwrap();
        fs::write(&path, &out).unwrap();
    } else {
        assert_eq!(out, fs::read_to_string(&path).unwrap());
    }
}
