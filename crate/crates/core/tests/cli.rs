use std::process::Command;

fn cayley(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cayley")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exited"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn stdout(args: &[&str]) -> String {
    let (code, out, err) = cayley(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

#[test]
fn encode_worked_examples() {
    assert_eq!(stdout(&["encode", "--group", "lamplighter", "--element", "lamps=-1,0,2;m=1"]), "ataatat-a");
    assert_eq!(stdout(&["encode", "--group", "lamplighter", "--element", "lamps=-1,1;m=-1"]), "tat-aaa");
    assert_eq!(stdout(&["encode", "--group", "h3", "--element", "x=3,y=-3,z=-4"]), "p-p-p-seseeq-");
}

#[test]
fn literals_round_trip() {
    let cases: &[(&[&str], &str)] = &[
        (&["--group", "lamplighter"], "lamps=-1,0,2;m=1"),
        (&["--group", "lamplighter"], "lamps=;m=-3"),
        (&["--group", "h3"], "x=3,y=-3,z=-4"),
        (&["--group", "h3"], "x=0,y=0,z=0"),
        (&["--group", "bs"], "stem=1+,0+;k=-5"),
        (&["--group", "bs", "--p", "2", "--q", "3"], "stem=2+,1-;k=7"),
        (&["--group", "bs", "--q", "3"], "stem=;k=0"),
    ];
    for (group, literal) in cases {
        let mut args = vec!["encode", "--element", literal];
        args.extend_from_slice(group);
        let word = stdout(&args);
        let mut args = vec!["decode", "--word", &word];
        args.extend_from_slice(group);
        assert_eq!(stdout(&args), *literal, "{group:?}");
    }
}

#[test]
fn lamplighter_profile_csv() {
    let dir = std::env::temp_dir().join(format!("cayley-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.csv");
    let (code, out, _) = cayley(&["profile", "--group", "lamplighter", "--n-max", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,h_lower,h_upper,witness"));
    let mut last = 0.0;
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let n: f64 = fields[0].parse().unwrap();
        let h: f64 = fields[2].parse().unwrap();
        assert!(h >= last && h <= 4.0 * n, "{line}");
        assert!(fields[3].len() <= n as usize * 2);
        last = h;
        rows += 1;
    }
    assert_eq!(rows, 13);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["profile", "--group", "h3", "--n-max", "8", "--format", "json"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    assert_eq!(first, stdout(&[&args[..], &["--jobs", "1"]].concat()));
}

#[test]
fn distances() {
    assert_eq!(stdout(&["dist", "--group", "lamplighter", "--element", "lamps=2;m=-1"]), "6");
    assert_eq!(stdout(&["dist", "--group", "h3", "--element", "x=1"]), "[0.25, 6]");
    assert_eq!(stdout(&["dist", "--group", "h3", "--element", "z=1", "--bfs-cap", "4"]), "1");
    assert_eq!(stdout(&["dist", "--group", "bs", "--element", "k=2047"]), "23");
    assert_eq!(stdout(&["dist", "--group", "bs", "--element", "stem=1+;k=1"]), "3");
    assert_eq!(stdout(&["dist", "--group", "h3", "--element", "z=100", "--bfs-cap", "3"]), "[4, inf]");
}

#[test]
fn mul_checks_the_multiplier_automaton() {
    let out = stdout(&["mul", "--group", "bs", "--element", "k=3", "--gen", "t", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["output"], "ata");
    assert_eq!(value["multiplier_accepts"], true);
    assert_eq!(stdout(&["mul", "--group", "lamplighter", "--word", "aa", "--gen", "tat-"]), "aata");
}

#[test]
fn verify_and_export() {
    let (code, out, _) = cayley(&["verify", "--group", "bs", "--q", "3", "--n-max", "5"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("violations: 0\n"), "{out}");
    let json = stdout(&["automaton-export", "--group", "lamplighter", "--gen", "t"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["tapes"], 2);
    assert!(value["transitions"].as_array().unwrap().iter().any(|t| t[1].as_array().unwrap().contains(&"#".into())));
    let json = stdout(&["automaton-export", "--group", "h3"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["tapes"], 1);
}

#[test]
fn reencode_commands() {
    let base = ["reencode", "--group", "lamplighter", "--map", "a=ae,t=te"];
    assert_eq!(stdout(&[&base[..], &["--element", "lamps=;m=0"]].concat()), "aeae");
    let word = stdout(&[&base[..], &["--element", "lamps=1;m=-1"]].concat());
    assert_eq!(stdout(&[&base[..], &["--word", &word]].concat()), "lamps=1;m=-1");
    let (code, out, _) = cayley(&[&base[..], &["--n-max", "8"]].concat());
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = cayley(&["reencode", "--group", "lamplighter", "--map", "a=t,t=a"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn config_file_and_precedence() {
    let dir = std::env::temp_dir().join(format!("cayley-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "group = h3\nelement = x=3,y=-3,z=-4\n").unwrap();
    let cfg = path.to_str().unwrap();
    assert_eq!(stdout(&["encode", "--config", cfg]), "p-p-p-seseeq-");
    assert_eq!(stdout(&["encode", "--config", cfg, "--element", "x=1"]), "se");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors() {
    for args in [
        &["encode", "--group", "bs", "--p", "2", "--q", "2", "--element", "k=1"][..],
        &["encode", "--group", "free", "--element", "k=1"],
        &["decode", "--group", "lamplighter", "--word", "at"],
        &["encode", "--group", "h3", "--element", "x=one"],
        &["profile"],
    ] {
        let (code, _, err) = cayley(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}
