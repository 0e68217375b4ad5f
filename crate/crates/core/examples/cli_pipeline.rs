// Drives the command-line interface in-process.

use bezkit::cli::run;

fn call(args: &[&str], input: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["bezkit"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    let text = if code == 0 { out } else { err };
    (code, String::from_utf8_lossy(&text).into_owned())
}

pub fn run_example() -> Result<(), String> {
    let parabola = r#"{"p0":{"field":"Q","coeffs":[["1","1"]]},
                       "p1":{"field":"Q","coeffs":[["0","1"],["1","1"]]},
                       "p2":{"field":"Q","coeffs":[["0","1"],["0","1"],["1","1"]]}}"#;
    let hermite = r#"{"field":"Q[i]","coeffs":[["0","1","-1","1"],["1","1","0","1"]]}"#;
    for (args, input) in [
        (&["implicitize"][..], parabola),
        (&["hermite"][..], hermite),
        (&["sample", "--samples", "3"][..], parabola),
    ] {
        let (code, text) = call(args, input);
        print!("$ bezkit {} -> {code}\n{text}", args.join(" "));
        if code != 0 {
            return Err(text);
        }
    }
    Ok(())
}

fn main() -> Result<(), String> {
    run_example()
}
