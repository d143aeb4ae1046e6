// Drives the command-line interface in-process.

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let runs: [&[&str]; 4] = [
        &["bdq", "triples", "enumerate", "--type", "E6", "--nonempty", "--count"],
        &["bdq", "cubic", "discriminant", "--form", "0,1,-1,0", "--format", "text"],
        &["bdq", "orders", "enumerate", "--algebra", "KL", "--index", "3", "--format", "text"],
        &["bdq", "coset", "same", "--form1", "1,1,t^-1", "--form2", "1,1,0"],
    ];
    for argv in runs {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = bdq::cli::run_with(argv.iter().copied(), &mut out, &mut err);
        if code != 0 {
            return Err(String::from_utf8_lossy(&err).into_owned().into());
        }
        print!("$ {}\n{}", argv.join(" "), String::from_utf8(out)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
