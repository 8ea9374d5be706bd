//! One function per subcommand, each producing a report.

use lasagna_core::arcring::{center_bruteforce, DEFAULT_MAX_CENTER_N};
use lasagna_core::cabled::{cabled_bruteforce, cabled_direct, CabledParams};
use lasagna_core::center::{admissible_basis, center_graded, SignConvention};
use lasagna_core::colimit::{cabled_khr2_framed_unknot, FramingSign, TruncatedSystem};
use lasagna_core::intlinalg::{GradedGroup, GroupPiece, Limits};
use lasagna_core::Error;
use serde_json::json;

use crate::report::{AdmissiblePiece, RankEntry, Report};
use crate::CliError;

#[derive(Clone, Debug, clap::Args)]
pub struct S2d2Args {
    /// Rank N of the Frobenius algebra.
    #[arg(long = "N")]
    pub rank: usize,
    /// Level alpha of each component; more than one gives an unlink.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    pub alpha: Vec<i64>,
    /// Framing of each component; only 0 is handled here.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub framing: Vec<i64>,
    /// Report quantum degrees -q_max <= j <= 0.
    #[arg(long, default_value_t = 8)]
    pub q_max: u64,
    /// Truncation level of the brute-force quotient (default: the smallest
    /// provably stable one).
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Also run the brute-force quotient and compare.
    #[arg(long)]
    pub oracle: bool,
    /// Accept a truncation below the stability bound.
    #[arg(long)]
    pub allow_unstable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PSign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SignArg {
    Conjectured,
    Flipped,
    #[value(name = "psi+phi-")]
    PsiPlusPhiMinus,
    #[value(name = "psi-phi+")]
    PsiMinusPhiPlus,
}

impl SignArg {
    fn convention(self) -> SignConvention {
        match self {
            SignArg::Conjectured => SignConvention::CONJECTURED,
            SignArg::Flipped => SignConvention::FLIPPED,
            SignArg::PsiPlusPhiMinus => SignConvention { psi: 1, phi: -1 },
            SignArg::PsiMinusPhiPlus => SignConvention { psi: -1, phi: 1 },
        }
    }
}

#[derive(Clone, Debug, clap::Args)]
pub struct DpArgs {
    #[arg(long, value_enum)]
    pub p_sign: PSign,
    /// Highest level of the truncated system.
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = -8)]
    pub j_min: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub j_max: i64,
    #[arg(long, value_enum, default_value_t = SignArg::Conjectured)]
    pub sign: SignArg,
    /// Also run every other sign convention and compare.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Clone, Debug, clap::Args)]
pub struct CenterArgs {
    #[arg(long)]
    pub n: usize,
    /// Also compute the center of the arc ring directly and compare.
    #[arg(long)]
    pub oracle: bool,
    /// Largest n accepted by the direct computation.
    #[arg(long, default_value_t = DEFAULT_MAX_CENTER_N)]
    pub oracle_max_n: usize,
}

fn entries(g: &GradedGroup, degrees: impl Iterator<Item = i64>) -> Result<Vec<RankEntry>, CliError> {
    degrees.map(|j| RankEntry::new(0, j, &g.piece(0, j))).collect()
}

/// Even degrees from `lo` to `hi`, ascending.
fn even_degrees(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|j| j % 2 == 0)
}

fn free_ranks(entries: &[RankEntry]) -> Vec<(i64, usize)> {
    entries.iter().map(|e| (e.j, e.rank)).collect()
}

pub fn s2d2(args: &S2d2Args, limits: Limits) -> Result<Report, CliError> {
    if args.alpha.is_empty() {
        return Err(CliError::invalid("at least one alpha is required"));
    }
    let framing = if args.framing.is_empty() { vec![0; args.alpha.len()] } else { args.framing.clone() };
    if framing.len() != args.alpha.len() {
        return Err(CliError::invalid("framing and alpha lengths differ"));
    }
    if let Some(&f) = framing.iter().find(|&&f| f != 0) {
        return Err(Error::NonzeroFraming(f).into());
    }
    let q_min = -(args.q_max as i64);
    let mut params = CabledParams::unlink(args.rank, args.alpha.clone(), 0, q_min);
    params.framing = framing;
    params.allow_unstable = args.allow_unstable;
    params.limits = limits;
    params.r_max = args.r_max.unwrap_or_else(|| params.required_r_max());
    let components = args.alpha.len();
    let brute_needed = components > 1 || args.oracle;
    let stable = !brute_needed || params.r_max >= params.required_r_max();
    let degrees = || even_degrees(q_min, 0);

    let parameters = json!({
        "N": args.rank,
        "alpha": args.alpha,
        "framing": params.framing,
        "q_max": args.q_max,
        "r_max": brute_needed.then_some(params.r_max),
        "route": if components == 1 { "direct" } else { "bruteforce" },
    });
    let invariant = if components == 1 { "cabled_unknot" } else { "cabled_unlink" };

    let brute = if brute_needed { Some(cabled_bruteforce(&params)?) } else { None };
    let (graded_ranks, oracle) = if components == 1 {
        let direct = cabled_direct(args.rank, args.alpha[0], (args.q_max / 2) as usize)?;
        let primary = entries(&direct, degrees())?;
        let oracle = brute.map(|b| entries(&b, degrees())).transpose()?;
        (primary, oracle)
    } else {
        // Over the rationals the unlink is the convolution of unknots.
        let primary = entries(brute.as_ref().expect("computed above"), degrees())?;
        let half = (args.q_max / 2) as usize;
        let unknot = cabled_direct(args.rank, 0, half)?;
        let single: Vec<usize> = (0..=half).map(|q| unknot.rank(0, -2 * q as i64)).collect();
        let mut power = vec![0usize; half + 1];
        power[0] = 1;
        for _ in 0..components {
            power = (0..=half).map(|q| (0..=q).map(|a| power[a] * single[q - a]).sum()).collect();
        }
        let mut conv = GradedGroup::new();
        for (q, &r) in power.iter().enumerate() {
            conv.set(0, -2 * q as i64, GroupPiece::free(r));
        }
        (primary, Some(entries(&conv, degrees())?))
    };
    let oracle_agreement = oracle.as_ref().map(|o| match components {
        1 => *o == graded_ranks,
        _ => free_ranks(o) == free_ranks(&graded_ranks),
    });
    Ok(Report {
        invariant: invariant.into(),
        parameters,
        graded_ranks,
        stable,
        sign_convention: None,
        oracle_agreement,
        oracle_graded_ranks: oracle,
        admissible_basis: None,
    })
}

pub fn dp(args: &DpArgs, limits: Limits) -> Result<Report, CliError> {
    let p_sign = match args.p_sign {
        PSign::Positive => FramingSign::Positive,
        PSign::Negative => FramingSign::Negative,
    };
    let mut sys = TruncatedSystem::new(p_sign, args.n_max, args.j_min);
    sys.j_max = args.j_max;
    sys.limits = limits;
    let signs = args.sign.convention();
    let run = |signs: SignConvention| -> Result<Vec<RankEntry>, CliError> {
        let mut s = sys.clone();
        s.signs = signs;
        let r = cabled_khr2_framed_unknot(&s)?;
        let mut out = entries(&r.group, even_degrees(args.j_min, args.j_max))?;
        for e in &mut out {
            e.stable = Some(r.stable[&e.j]);
        }
        Ok(out)
    };
    let graded_ranks = run(signs)?;
    let oracle_agreement = if args.oracle {
        let mut agree = true;
        for other in SignConvention::all().into_iter().filter(|s| *s != signs) {
            agree &= run(other)? == graded_ranks;
        }
        Some(agree)
    } else {
        None
    };
    let stable = graded_ranks.iter().all(|e| e.stable == Some(true));
    Ok(Report {
        invariant: "cabled_khr2_framed_unknot".into(),
        parameters: json!({
            "p_sign": match args.p_sign { PSign::Positive => "positive", PSign::Negative => "negative" },
            "n_max": args.n_max,
            "j_min": args.j_min,
            "j_max": args.j_max,
        }),
        graded_ranks,
        stable,
        sign_convention: Some(signs.name().into()),
        oracle_agreement,
        oracle_graded_ranks: None,
        admissible_basis: None,
    })
}

pub fn center(args: &CenterArgs, limits: Limits) -> Result<Report, CliError> {
    let n = args.n;
    if 2 * n > 62 {
        return Err(CliError::invalid(format!("n = {n} is too large for subset bitmasks")));
    }
    let degrees = || (0..=2 * n as i64).map(|k| 2 * k);
    let graded = center_graded(n);
    let graded_ranks = entries(&graded, degrees())?;
    let admissible = (0..=n)
        .map(|k| AdmissiblePiece {
            k,
            degree: 2 * k as i64,
            monomials: admissible_basis(n, k).iter().map(ToString::to_string).collect(),
        })
        .collect();
    let oracle = if args.oracle {
        let brute = center_bruteforce(n, args.oracle_max_n, &limits)?;
        Some(entries(&brute.ranks, degrees())?)
    } else {
        None
    };
    Ok(Report {
        invariant: "arc_ring_center".into(),
        parameters: json!({ "n": n }),
        oracle_agreement: oracle.as_ref().map(|o| *o == graded_ranks),
        graded_ranks,
        stable: true,
        sign_convention: None,
        oracle_graded_ranks: oracle,
        admissible_basis: Some(admissible),
    })
}
