use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Arg, ArgAction, ArgMatches};
use ncqm_cli::{dispatch, emit, emit_many, make_command, read_sweep, run_sweep, Emitted, Format, Verb};

fn flag_help(flag: &str) -> &'static str {
    match flag {
        "hbar" => "Planck constant, exact rational such as 1 or 1/2",
        "theta" => "position noncommutativity (rational)",
        "b" => "internal magnetic parameter b_in (rational)",
        "r" | "s" => "Bopp-shift parameter (rational)",
        "matrix" => "commutator matrix as JSON rows of rational strings",
        "ham" => "symmetric Hamiltonian matrix as JSON rows of rational strings",
        "g" | "h" => "JSON object: group element {theta,phi,psi,q1,q2,p1,p2} or, for star, a symbol",
        "l" => "JSON functional {a1,a2,a3,b1,b2,c1,c2}",
        "f" => "JSON symbol: list of {exponents,re,im}",
        _ => "",
    }
}

fn cli() -> clap::Command {
    let mut app = clap::Command::new("ncqm")
        .about("Exact sector, Bopp-shift, Darboux, group and star-product reports")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["json", "text"])
                .default_value("json"),
        )
        .arg(
            Arg::new("sweep")
                .long("sweep")
                .global(true)
                .value_name("PATH")
                .value_parser(clap::value_parser!(PathBuf))
                .help("JSON array of option objects; one report per entry"),
        );
    for verb in Verb::ALL {
        let mut sub = clap::Command::new(verb.name()).arg(
            Arg::new("subverb")
                .value_parser(clap::builder::PossibleValuesParser::new(verb.subverbs()))
                .required(false),
        );
        for &flag in verb.flags() {
            sub = sub.arg(
                Arg::new(flag)
                    .long(flag)
                    .action(ArgAction::Set)
                    .allow_hyphen_values(true)
                    .help(flag_help(flag)),
            );
        }
        app = app.subcommand(sub);
    }
    app
}

fn write(out: &Emitted) -> ExitCode {
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}

fn main() -> ExitCode {
    let matches = cli().get_matches();
    let format = match matches.get_one::<String>("format").map(String::as_str) {
        Some("text") => Format::Text,
        _ => Format::Json,
    };
    let (verb_name, sub) = matches.subcommand().expect("subcommand required");
    let options = collect_options(verb_name, sub);
    let subverb = sub.get_one::<String>("subverb").map(String::as_str);

    let cmd = match make_command(verb_name, subverb, options) {
        Ok(cmd) => cmd,
        Err(e) => {
            eprintln!("error: {e}");
            let mut help = cli();
            help.build();
            if let Some(s) = help.find_subcommand_mut(verb_name) {
                eprintln!("{}", s.render_usage());
            }
            return ExitCode::from(2);
        }
    };

    match sub.get_one::<PathBuf>("sweep") {
        Some(path) => match read_sweep(path) {
            Ok(entries) => write(&emit_many(&run_sweep(&cmd, &entries), format)),
            Err(e) => {
                eprintln!("error [{}]: {e}", e.kind());
                ExitCode::from(1)
            }
        },
        None => write(&emit(&dispatch(&cmd), format)),
    }
}

fn collect_options(verb_name: &str, sub: &ArgMatches) -> BTreeMap<String, String> {
    let verb = Verb::from_name(verb_name).expect("clap only accepts known verbs");
    verb.flags()
        .iter()
        .filter_map(|&f| sub.get_one::<String>(f).map(|v| (f.to_string(), v.clone())))
        .collect()
}
