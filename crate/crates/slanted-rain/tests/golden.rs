use slanted_rain::cli::run;

fn call(args: &[&str]) -> String {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("slanted-rain").chain(args.iter().copied());
    assert_eq!(run(argv, &mut out, &mut err), 0, "{}", String::from_utf8_lossy(&err));
    String::from_utf8(out).unwrap()
}

const FIGURE: &[&str] = &["rain", "render", "--len", "19", "--step", "1", "--highlight-subrain", "3", "--max-layer", "17"];

fn figure(format: &str) -> String {
    let mut args = FIGURE.to_vec();
    args.extend(["--format", format]);
    call(&args)
}

#[test]
fn figure_svg() {
    assert_eq!(figure("svg"), include_str!("golden/figure.svg"));
}

#[test]
fn figure_ascii() {
    assert_eq!(figure("ascii"), include_str!("golden/figure.txt"));
}

#[test]
fn pinned_certificates() {
    assert_eq!(call(&["find", "triangle", "--coloring", "hash:2:0x1"]), include_str!("golden/cert_hash_2_0x1.json"));
    assert_eq!(
        call(&["find", "simplex", "--dim", "3", "--coloring", "hash:2:0x2"]),
        include_str!("golden/cert_hash_2_0x2_n3.json")
    );
    assert_eq!(
        call(&["find", "triangle", "--coloring", "hash:2:0x1", "--target", "3/2"]),
        include_str!("golden/cert_hash_2_0x1_target_3_2.json")
    );
}
