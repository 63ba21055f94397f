//! Command-line front end: encode, decode, genpls, metrics.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use plstego::crypto::{self, PlsKeyFile, SealedPayload};
use plstego::image_model::{load_image, save_image, ImageMatrix};
use plstego::metrics::{compare_report, histogram_csv, Channel};
use plstego::pls::{
    generate_pls, parse_manual_pls, required_pixels, validate_pls, PixelLocatorSequence,
};
use plstego::stego_codec::{capacity, embed, extract};
use plstego::Error;

#[derive(Parser)]
#[command(name = "plstego", version, about = "LSB steganography with an encrypted pixel locator sequence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Seal a message and embed it into a cover image.
    Encode(EncodeArgs),
    /// Recover a message from a stego image and its PLS key file.
    Decode(DecodeArgs),
    /// Generate a sealed PLS key file without embedding anything.
    Genpls(GenplsArgs),
    /// Compare a cover/stego pair: MSE, PSNR, histograms.
    Metrics(MetricsArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Cover image (PNG or BMP).
    #[arg(long)]
    cover: PathBuf,
    /// Message text. Mutually exclusive with --message-file.
    #[arg(long, conflicts_with = "message_file")]
    message: Option<String>,
    /// Read the message from a file instead.
    #[arg(long)]
    message_file: Option<PathBuf>,
    /// Output stego image path (must be .png).
    #[arg(long)]
    out: PathBuf,
    /// Output path for the encrypted PLS key file.
    #[arg(long)]
    pls_out: PathBuf,
    /// Environment variable holding the passphrase; prompts if absent.
    #[arg(long)]
    passphrase_env: Option<String>,
    /// Seed for PLS generation; random when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Plaintext index file (one decimal index per line) to use instead
    /// of a generated sequence.
    #[arg(long)]
    manual_pls: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    /// Stego image path.
    #[arg(long)]
    stego: PathBuf,
    /// Encrypted PLS key file path.
    #[arg(long)]
    pls: PathBuf,
    /// Write the recovered message here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    passphrase_env: Option<String>,
}

#[derive(Args)]
struct GenplsArgs {
    /// Take the pixel count from this image.
    #[arg(long, conflicts_with = "pixels")]
    cover: Option<PathBuf>,
    /// Total pixel count, given directly.
    #[arg(long)]
    pixels: Option<u64>,
    /// Number of payload characters the sequence must cover.
    #[arg(long)]
    message_length: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    passphrase_env: Option<String>,
    /// Output path for the sealed key file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    stego: PathBuf,
    /// Directory for report.json and the three histogram CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the quality report as JSON on stdout.
    #[arg(long)]
    json: bool,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapacityExceeded { .. } => 2,
        Error::UnsupportedFormat(_) | Error::DecodeError(_) => 3,
        Error::FileNotFound(_) | Error::Io(_) => 4,
        Error::InvalidPls(_) | Error::MalformedPls(_) | Error::IndexOutOfRange { .. } => 5,
        Error::BadPadding => 6,
        Error::InvalidHexDigit | Error::OddLength | Error::MalformedPayload(_) => 7,
        Error::DimensionMismatch(..) => 8,
        Error::EmptyPassphrase | Error::EmptyPlaintext => 1,
    }
}

fn passphrase(env_var: &Option<String>) -> Result<String, Error> {
    match env_var {
        Some(var) => std::env::var(var).map_err(|_| Error::EmptyPassphrase),
        None => rpassword::prompt_password("Passphrase: ").map_err(Error::Io),
    }
}

fn require_png(path: &Path) -> Result<(), Error> {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("png") => Ok(()),
        _ => Err(Error::UnsupportedFormat(
            "stego output must be a .png file".into(),
        )),
    }
}

fn check_sequence(pls: &PixelLocatorSequence, total: u64) -> Result<(), Error> {
    let issues = validate_pls(pls, total);
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidPls(
            issues
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ))
    }
}

fn print_report(cover: &ImageMatrix, stego: &ImageMatrix) -> Result<(), Error> {
    let cmp = compare_report(cover, stego)?;
    println!(
        "quality: {}",
        serde_json::to_string(&cmp.report).expect("report serializes")
    );
    Ok(())
}

fn cmd_encode(args: &EncodeArgs) -> Result<(), Error> {
    require_png(&args.out)?;
    let cover = load_image(&args.cover)?;
    let message = match (&args.message, &args.message_file) {
        (Some(m), _) => m.clone().into_bytes(),
        (None, Some(path)) => std::fs::read(path)?,
        (None, None) => return Err(Error::EmptyPlaintext),
    };
    if message.is_empty() {
        return Err(Error::EmptyPlaintext);
    }
    let pass = passphrase(&args.passphrase_env)?;

    let sealed = crypto::seal(&message, &pass)?;
    let payload = sealed.to_hex();
    let n_enc = payload.len() as u64;
    let n_p = required_pixels(n_enc);
    let total = cover.total_pixels();
    if n_p > total {
        return Err(Error::CapacityExceeded {
            needed: n_p,
            available: total,
        });
    }

    let pls = match &args.manual_pls {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let pls = parse_manual_pls(&text, total)?;
            if pls.len() as u64 != n_p {
                return Err(Error::InvalidPls(format!(
                    "manual PLS has {} indices, payload needs {n_p}",
                    pls.len()
                )));
            }
            pls
        }
        None => {
            let seed = args.seed.unwrap_or_else(rand::random);
            generate_pls(total, n_p, seed)?
        }
    };

    let stego = embed(&cover, &pls, &payload)?;
    save_image(&stego, &args.out)?;
    let key_file = crypto::seal_pls(&pls, &pass)?;
    std::fs::write(&args.pls_out, key_file.to_bytes())?;

    println!("encoded characters (N_enc): {n_enc}");
    println!("pixels used (N_p): {n_p}");
    println!("image capacity (chars): {}", capacity(&cover));
    print_report(&cover, &stego)?;
    Ok(())
}

fn cmd_decode(args: &DecodeArgs) -> Result<(), Error> {
    let stego = load_image(&args.stego)?;
    let pass = passphrase(&args.passphrase_env)?;
    let key_bytes = std::fs::read(&args.pls)?;
    let key_file = PlsKeyFile::from_bytes(&key_bytes)?;
    let pls = crypto::open_pls(&key_file, &pass, stego.total_pixels())?;
    check_sequence(&pls, stego.total_pixels())?;

    let payload = extract(&stego, &pls)?;
    let bytes = crypto::from_hex(&payload)?;
    let sealed = SealedPayload::from_bytes(&bytes)?;
    let plaintext = crypto::unseal(&sealed, &pass)?;
    match &args.out {
        Some(path) => std::fs::write(path, &plaintext)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&plaintext)?;
            println!();
        }
    }
    Ok(())
}

fn cmd_genpls(args: &GenplsArgs) -> Result<(), Error> {
    let total = match (&args.cover, args.pixels) {
        (Some(path), _) => load_image(path)?.total_pixels(),
        (None, Some(n)) => n,
        (None, None) => {
            return Err(Error::InvalidPls(
                "give either --cover or --pixels".into(),
            ))
        }
    };
    let n_p = required_pixels(args.message_length);
    if n_p > total {
        return Err(Error::CapacityExceeded {
            needed: n_p,
            available: total,
        });
    }
    let pass = passphrase(&args.passphrase_env)?;
    let seed = args.seed.unwrap_or_else(rand::random);
    let pls = generate_pls(total, n_p, seed)?;
    let key_file = crypto::seal_pls(&pls, &pass)?;
    std::fs::write(&args.out, key_file.to_bytes())?;
    println!("pixels used (N_p): {n_p}");
    Ok(())
}

fn cmd_metrics(args: &MetricsArgs) -> Result<(), Error> {
    let cover = load_image(&args.cover)?;
    let stego = load_image(&args.stego)?;
    let cmp = compare_report(&cover, &stego)?;
    let report_json = serde_json::to_string_pretty(&cmp.report).expect("report serializes");
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), &report_json)?;
        for (i, channel) in Channel::ALL.iter().enumerate() {
            let csv = histogram_csv(&cmp.cover_histograms[i], &cmp.stego_histograms[i]);
            std::fs::write(dir.join(format!("histogram_{}.csv", channel.name())), csv)?;
        }
    }
    if args.json || args.out.is_none() {
        println!("{report_json}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Genpls(args) => cmd_genpls(args),
        Command::Metrics(args) => cmd_metrics(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
