//! Implementations of the CLI subcommands.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cuborder_core::arrange::{arrange_cube, Arrangement};
use cuborder_core::cube::{load_fact_table_path, Cube};
use cuborder_core::homogeneity::{self, HomogeneityReport};
use cuborder_core::Error as CoreError;

use crate::render;
use crate::{CliError, ImageFormat};

type CmdResult = Result<(), CliError>;

fn load_cube(facts: &Path, schema: &Path) -> Result<Cube, CliError> {
    Ok(load_fact_table_path(facts, schema)?)
}

fn load_arrangement(path: &Path) -> Result<Arrangement, CliError> {
    let text = std::fs::read_to_string(path).map_err(CoreError::from)?;
    Ok(Arrangement::from_toml_str(&text)?)
}

fn write_output(path: &Path, contents: &str) -> CmdResult {
    std::fs::write(path, contents).map_err(CoreError::from)?;
    Ok(())
}

/// Computes the arrangement, writes its document, and prints the initial and
/// arranged homogeneity plus the gain and sparsity.
pub fn cmd_arrange(facts: &Path, schema: &Path, out: &Path) -> CmdResult {
    let cube = load_cube(facts, schema)?;
    let ih_initial = homogeneity::ih(&cube)?;
    if ih_initial == 0.0 {
        return Err(CoreError::ZeroBaseline.into());
    }
    let arrangement = arrange_cube(&cube)?;
    let arranged = cube.apply_arrangement(&arrangement)?;
    let ih_arranged = homogeneity::ih(&arranged)?;
    let gain = homogeneity::gain(ih_initial, ih_arranged)?;
    write_output(out, &arrangement.to_toml_string())?;
    println!("sparsity = {}", cube.sparsity());
    println!("ih_initial = {ih_initial}");
    println!("ih_arranged = {ih_arranged}");
    println!("gain = {gain}");
    Ok(())
}

/// Scores the cube (optionally under an arrangement) and writes the report.
pub fn cmd_evaluate(
    facts: &Path,
    schema: &Path,
    out: &Path,
    arrangement: Option<&PathBuf>,
) -> CmdResult {
    let cube = load_cube(facts, schema)?;
    let report = match arrangement {
        None => HomogeneityReport::for_cube(&cube)?,
        Some(path) => {
            let arrangement = load_arrangement(path)?;
            let arranged = cube.apply_arrangement(&arrangement)?;
            let report = HomogeneityReport::for_cube(&arranged)?;
            let ih_initial = homogeneity::ih(&cube)?;
            if ih_initial > 0.0 {
                let gain = homogeneity::gain(ih_initial, report.ih)?;
                report.with_gain(gain)
            } else {
                report
            }
        }
    };
    write_output(out, &report.to_toml_string())?;
    println!("ih = {}", report.ih);
    Ok(())
}

/// Splits the base seed into an independent per-rate stream (splitmix64
/// finalizer over seed and rate bits), so single-rate runs reproduce the
/// matching row of a multi-rate sweep.
fn rate_seed(seed: u64, rate: f64) -> u64 {
    let mut z = seed ^ rate.to_bits().wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples the facts at each rate, arranges each sample, and tabulates
/// rate, sparsity, both homogeneity indices and the gain.
pub fn cmd_sweep(facts: &Path, schema: &Path, out: &Path, rates: &[f64], seed: u64) -> CmdResult {
    for &rate in rates {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(CoreError::InvalidRate { rate }.into());
        }
    }
    let cube = load_cube(facts, schema)?;
    let mut table = String::from("rate,sparsity,ih_initial,ih_arranged,gain\n");
    for &rate in rates {
        let sampled = cube.sample_facts(rate, rate_seed(seed, rate))?;
        let sparsity = sampled.sparsity();
        let ih_initial = homogeneity::ih(&sampled)?;
        let arrangement = arrange_cube(&sampled)?;
        let arranged = sampled.apply_arrangement(&arrangement)?;
        let ih_arranged = homogeneity::ih(&arranged)?;
        let gain = if ih_initial == 0.0 {
            String::new()
        } else {
            homogeneity::gain(ih_initial, ih_arranged)?.to_string()
        };
        writeln!(table, "{rate},{sparsity},{ih_initial},{ih_arranged},{gain}")
            .expect("string write");
    }
    write_output(out, &table)?;
    print!("{table}");
    Ok(())
}

/// Projects occupancy onto two dimensions and writes a heatmap image.
pub fn cmd_render(
    facts: &Path,
    schema: &Path,
    out: &Path,
    dims: &[String],
    arrangement: Option<&PathBuf>,
    format: ImageFormat,
) -> CmdResult {
    if dims.len() != 2 {
        return Err(CliError::Input(format!(
            "--dims expects exactly two dimension names, got {}",
            dims.len()
        )));
    }
    let mut cube = load_cube(facts, schema)?;
    if let Some(path) = arrangement {
        let arrangement = load_arrangement(path)?;
        cube = cube.apply_arrangement(&arrangement)?;
    }
    let row_dim =
        cube.schema()
            .dimension_index(&dims[0])
            .ok_or_else(|| CoreError::UnknownDimension {
                name: dims[0].clone(),
            })?;
    let col_dim =
        cube.schema()
            .dimension_index(&dims[1])
            .ok_or_else(|| CoreError::UnknownDimension {
                name: dims[1].clone(),
            })?;
    let image = render::project(&cube, row_dim, col_dim);
    let contents = match format {
        ImageFormat::Ppm => image.to_pbm(),
        ImageFormat::Svg => image.to_svg(),
    };
    write_output(out, &contents)
}
