//! Command-line front end: compress, decompress, measure, benchmark.
//!
//! Exit codes: 0 success, 1 runtime error, 2 usage error. Reports go to
//! standard output, diagnostics to standard error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ibtc::{codec, container, metrics, pnm, Mode, QualityReport};

#[derive(Parser)]
#[command(name = "ibtc", version, about = "BTC/AMBTC/IAMBTC grayscale image codec")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a PGM image to an IBTC file
    Compress {
        input: PathBuf,
        output: PathBuf,
        /// Coding mode
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Decompress an IBTC file to a PGM image
    Decompress { input: PathBuf, output: PathBuf },
    /// Report MSE and PSNR between two PGM images
    Metrics {
        original: PathBuf,
        reconstructed: PathBuf,
    },
    /// Rate/distortion table over a directory of PGM images
    Bench {
        corpus: PathBuf,
        /// Report format
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Include classic BTC in the table
        #[arg(long)]
        with_btc: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Btc,
    Ambtc,
    L1,
    L2,
    L3,
    L4,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Mode {
        match arg {
            ModeArg::Btc => Mode::Btc,
            ModeArg::Ambtc => Mode::Ambtc,
            ModeArg::L1 => Mode::Level1,
            ModeArg::L2 => Mode::Level2,
            ModeArg::L3 => Mode::Level3,
            ModeArg::L4 => Mode::Level4,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("ibtc: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compress {
            input,
            output,
            mode,
        } => compress(&input, &output, mode.into()),
        Command::Decompress { input, output } => decompress(&input, &output),
        Command::Metrics {
            original,
            reconstructed,
        } => report_metrics(&original, &reconstructed),
        Command::Bench {
            corpus,
            format,
            with_btc,
        } => bench(&corpus, format, with_btc),
    }
}

fn read_raster(path: &Path) -> Result<pnm::Raster> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    pnm::read_pgm(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn compress(input: &Path, output: &Path, mode: Mode) -> Result<()> {
    let raster = read_raster(input)?;
    let ci = codec::encode_image(&raster, mode)?;
    let file = container::serialize(&ci);
    fs::write(output, &file).with_context(|| format!("writing {}", output.display()))?;
    println!(
        "bpp={} payload_bytes={}",
        fmt_bpp(metrics::bpp(&ci, &raster)),
        file.len() - container::HEADER_LEN
    );
    Ok(())
}

fn decompress(input: &Path, output: &Path) -> Result<()> {
    let bytes = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let ci = container::deserialize(&bytes).with_context(|| format!("parsing {}", input.display()))?;
    let raster = codec::decode_image(&ci)?;
    fs::write(output, pnm::write_pgm(&raster))
        .with_context(|| format!("writing {}", output.display()))?;
    Ok(())
}

fn report_metrics(original: &Path, reconstructed: &Path) -> Result<()> {
    let a = read_raster(original)?;
    let b = read_raster(reconstructed)?;
    let mse = metrics::mse(&a, &b)?;
    println!("MSE={:.2} PSNR={:.2}", mse, metrics::psnr(mse));
    Ok(())
}

struct BenchRow {
    name: String,
    cells: Vec<(f64, f64)>, // (bpp, psnr) per mode
}

fn bench(corpus: &Path, format: Format, with_btc: bool) -> Result<()> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus)
        .with_context(|| format!("reading {}", corpus.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|path| {
            path.extension()
                .is_some_and(|ext| ext.eq_ignore_ascii_case("pgm"))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no PGM files in {}", corpus.display());
    }

    let mut modes = vec![Mode::Ambtc, Mode::Level1, Mode::Level2, Mode::Level3, Mode::Level4];
    if with_btc {
        modes.insert(0, Mode::Btc);
    }

    let mut rows = Vec::with_capacity(files.len() + 1);
    for path in &files {
        let raster = read_raster(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let mut cells = Vec::with_capacity(modes.len());
        for &mode in &modes {
            let ci = codec::encode_image(&raster, mode)?;
            let decoded = codec::decode_image(&ci)?;
            let report = QualityReport::measure(&raster, &decoded, &ci)?;
            cells.push((report.bpp, report.psnr));
        }
        rows.push(BenchRow { name, cells });
    }

    let n = rows.len() as f64;
    let averages = (0..modes.len())
        .map(|i| {
            (
                rows.iter().map(|r| r.cells[i].0).sum::<f64>() / n,
                rows.iter().map(|r| r.cells[i].1).sum::<f64>() / n,
            )
        })
        .collect();
    rows.push(BenchRow {
        name: "Average".into(),
        cells: averages,
    });

    match format {
        Format::Csv => print_csv(&modes, &rows),
        Format::Markdown => print_markdown(&modes, &rows),
    }
    Ok(())
}

fn mode_label(mode: Mode) -> &'static str {
    match mode {
        Mode::Btc => "BTC",
        Mode::Ambtc => "AMBTC",
        Mode::Level1 => "Level1",
        Mode::Level2 => "Level2",
        Mode::Level3 => "Level3",
        Mode::Level4 => "Level4",
    }
}

fn fmt_bpp(bpp: f64) -> String {
    format!("{bpp}")
}

fn fmt_psnr(psnr: f64) -> String {
    format!("{psnr:.2}")
}

fn print_csv(modes: &[Mode], rows: &[BenchRow]) {
    let mut header = vec!["image".to_string()];
    for &mode in modes {
        let label = mode_label(mode).to_ascii_lowercase();
        header.push(format!("{label}_bpp"));
        header.push(format!("{label}_psnr"));
    }
    println!("{}", header.join(","));
    for row in rows {
        let mut fields = vec![row.name.clone()];
        for &(bpp, psnr) in &row.cells {
            fields.push(fmt_bpp(bpp));
            fields.push(fmt_psnr(psnr));
        }
        println!("{}", fields.join(","));
    }
}

fn print_markdown(modes: &[Mode], rows: &[BenchRow]) {
    let mut header = vec!["Image".to_string()];
    for &mode in modes {
        header.push(format!("{} bpp", mode_label(mode)));
        header.push(format!("{} PSNR", mode_label(mode)));
    }
    println!("| {} |", header.join(" | "));
    println!("|{}|", vec!["---"; header.len()].join("|"));
    for row in rows {
        let mut fields = vec![row.name.clone()];
        for &(bpp, psnr) in &row.cells {
            fields.push(fmt_bpp(bpp));
            fields.push(fmt_psnr(psnr));
        }
        println!("| {} |", fields.join(" | "));
    }
}
