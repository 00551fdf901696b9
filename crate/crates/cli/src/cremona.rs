//! Build the five-point birational map for a registered group and orbit
//! representative, print the image cubic and its singularity report.

use clap::Parser;
use equigeo::checks::{build_context, RunConfig};
use equigeo::cremona::cremona_image;
use equigeo::group::small_orbits_on;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cremona",
    about = "Image cubic of the five-point birational map",
    version
)]
struct Cli {
    /// Group registry key (A5-standard, A5-nonstandard, S5-nonstandard).
    #[arg(long)]
    group: String,
    /// Orbit representative: a registry key (e.g. x1.s5) or a literal
    /// "a : b : c : d : e".
    #[arg(long)]
    orbit: String,
    /// Quadric registry key; defaults per group (X1 for the standard action,
    /// X2 otherwise).
    #[arg(long)]
    quadric: Option<String>,
    /// Cyclotomic conductor.
    #[arg(long, default_value_t = 120)]
    conductor: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        conductor: cli.conductor,
        ..RunConfig::default()
    };
    let ctx = match build_context(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let quadric_key = cli.quadric.unwrap_or_else(|| {
        if cli.group == "A5-standard" {
            "X1".to_string()
        } else {
            "X2".to_string()
        }
    });
    let run = || -> Result<(), String> {
        let grp = ctx.reg.group(&cli.group).map_err(|e| e.to_string())?;
        let quadric = ctx.reg.form(&quadric_key).map_err(|e| e.to_string())?;
        let rep = ctx
            .reg
            .point_or_literal(&cli.orbit)
            .map_err(|e| e.to_string())?;
        if !quadric.eval(&rep.coords).is_zero() {
            return Err("representative does not lie on the quadric".into());
        }
        let scan = small_orbits_on(&grp, &quadric, 19);
        let orbit = scan
            .find_orbit_of(&rep)
            .ok_or("representative is not in a small orbit of the group")?
            .orbit
            .clone();
        let (map, out) = cremona_image(&grp, &orbit, &quadric).map_err(|e| e.to_string())?;
        println!("orbit length: {}", orbit.len());
        println!("equivariant lift: {}", map.equivariant_lift);
        println!("image cubic: {}", out.image.render());
        println!("pushforward-invariant: {}", out.invariant);
        for r in &out.census {
            println!("  singular point {}  type {}  corank {}", r.point, r.kind, r.corank);
        }
        if let Some(norm) = &out.normalized_image {
            if norm != &out.image {
                println!("normalized image (original action): {}", norm.render());
            }
        }
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
