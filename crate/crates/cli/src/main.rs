use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use multidet::algebra::FgAbelianGroup;
use multidet::catring::{compute_k0_ring, pi0_ring, pi1_bimodule, validate_categorical_ring};
use multidet::cubes::{check_cubical_relations, validate_cube};
use multidet::determinant::{
    check_det_morphism, check_universal_factorization, compose_with_multiexact, cross_check_definitions, random_instances,
    sum_determinants, validate_cubical_determinant, validate_determinant, validate_multideterminant,
};
use multidet::picard::{check_multiexact_picard_functor, validate_picard, PicardPresentation};
use multidet::qcomplex::QComplex;
use multidet::selftest;
use multidet::trianglecat::{
    builtin, check_functor_verdier_admission, check_multiexact_tri_functor, check_verdier, octahedron_to_2cube,
    validate_presentation,
};
use multidet::workspace::{load_workspace, load_workspace_str, Workspace};
use multidet::{fixtures, Report, ReportItem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "multidet", version, about = "Checks for Picard groupoids, cubes and determinant functors")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = selftest::DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Default)]
struct Input {
    /// Workspace files.
    files: Vec<PathBuf>,
    /// Bundled fixture to load (repeatable): graded_lines, graded_lines_tensor,
    /// two_squares, rings, cubes, seeded_invalid_det.
    #[arg(long = "fixture")]
    fixtures: Vec<String>,
}

#[derive(Args, Clone, Default)]
struct Select {
    #[command(flatten)]
    input: Input,
    /// Restrict to one entry.
    #[arg(long)]
    id: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate Picard presentations.
    ValidatePicard(Select),
    /// Validate cubes.
    CheckCube(Select),
    /// Verify the face and degeneracy relations on enumerated or sampled cubes.
    CheckCubicalRelations {
        #[command(flatten)]
        sel: Select,
        /// Discrete presentation on this group instead of workspace entries.
        #[arg(long)]
        group: Option<String>,
        /// Cubes per level before switching to sampling.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Homology of the normalized Q-complex of a finite group.
    Qhomology {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
    },
    /// Structural validation of triangulated-category presentations.
    ValidatePresentation {
        #[command(flatten)]
        sel: Select,
        /// Check a builtin presentation (point, graded-lines).
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Check Verdier certificates of nine-diagrams.
    CheckVerdier {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        presentation: String,
        /// One diagram; default all.
        #[arg(long)]
        diagram: Option<String>,
    },
    /// Write an octahedron as a 2-cube of triangles and check its certificate.
    #[command(name = "oct-to-2cube")]
    OctTo2cube {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        octahedron: String,
        /// Write the extended workspace here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Multiexactness of Picard functors and triangulated functors.
    CheckMultiexact {
        #[command(flatten)]
        sel: Select,
        /// Coordinate bound for sampling infinite groups.
        #[arg(long, default_value_t = 2)]
        sample_bound: i64,
    },
    /// Verdier structures on pairs of triangles for multi-variable functors.
    CheckVerdierAdmission(Select),
    /// Single-variable determinant axioms.
    CheckDet(Select),
    /// Multi-determinant axioms.
    CheckMultidet(Select),
    /// Cubical definition of a determinant.
    CheckCubicalDet(Select),
    /// Compare the axiomatic and cubical verdicts.
    CrossCheck {
        #[command(flatten)]
        sel: Select,
        /// Also compare on this many random determinants on the same sources.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Sum of two determinants with the same signature.
    SumDets {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compose a determinant with a multiexact functor into its source.
    ComposeDet {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        det: String,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Naturality of determinant morphisms.
    CheckDetMorphism(Select),
    /// Factorizations through a universal determinant.
    CheckFactorization(Select),
    /// Categorical ring axioms.
    ValidateCatring(Select),
    /// The ring K0 of a presentation with a tensor functor.
    K0Ring {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        tensor: String,
    },
    /// Run the acceptance suite on the bundled fixtures.
    Selftest {
        /// Criteria to run; default all.
        #[arg(long = "only")]
        only: Vec<u8>,
    },
    /// Print the canonical form of the loaded workspace.
    EmitWorkspace {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the bundled fixtures to a directory.
    EmitFixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ValidatePicard(_) => "validate-picard",
            Command::CheckCube(_) => "check-cube",
            Command::CheckCubicalRelations { .. } => "check-cubical-relations",
            Command::Qhomology { .. } => "qhomology",
            Command::ValidatePresentation { .. } => "validate-presentation",
            Command::CheckVerdier { .. } => "check-verdier",
            Command::OctTo2cube { .. } => "oct-to-2cube",
            Command::CheckMultiexact { .. } => "check-multiexact",
            Command::CheckVerdierAdmission(_) => "check-verdier-admission",
            Command::CheckDet(_) => "check-det",
            Command::CheckMultidet(_) => "check-multidet",
            Command::CheckCubicalDet(_) => "check-cubical-det",
            Command::CrossCheck { .. } => "cross-check",
            Command::SumDets { .. } => "sum-dets",
            Command::ComposeDet { .. } => "compose-det",
            Command::CheckDetMorphism(_) => "check-det-morphism",
            Command::CheckFactorization(_) => "check-factorization",
            Command::ValidateCatring(_) => "validate-catring",
            Command::K0Ring { .. } => "k0-ring",
            Command::Selftest { .. } => "selftest",
            Command::EmitWorkspace { .. } => "emit-workspace",
            Command::EmitFixtures { .. } => "emit-fixtures",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let report = match dispatch(&cli) {
        Ok(Some(r)) => r,
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => Report::error(name, format!("{e:#}")),
    };
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_string(),
    };
    // a closed pipe is not an error of the check
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(report.status.exit_code() as u8)
}

/// `MULTIDET_BUDGET` overrides enumeration caps.
fn budget(default: u64) -> anyhow::Result<u64> {
    match std::env::var("MULTIDET_BUDGET") {
        Ok(v) => v.trim().parse().with_context(|| format!("MULTIDET_BUDGET={v} is not a count")),
        Err(_) => Ok(default),
    }
}

fn load(input: &Input) -> anyhow::Result<Workspace> {
    let mut ws = load_workspace(&input.files)?;
    for name in &input.fixtures {
        let text = selftest::bundled(name).ok_or_else(|| anyhow!("no bundled fixture {name}"))?;
        ws = ws.merge(load_workspace_str(text)?.file)?;
    }
    Ok(ws)
}

/// Entries of one kind, or the one named by `--id`.
fn select<'a, T>(map: &'a BTreeMap<String, T>, id: &Option<String>, kind: &str) -> anyhow::Result<Vec<(&'a String, &'a T)>> {
    match id {
        Some(id) => {
            let (k, v) = map.get_key_value(id).ok_or_else(|| anyhow!("unresolved reference: no {kind} {id}"))?;
            Ok(vec![(k, v)])
        }
        None => Ok(map.iter().collect()),
    }
}

/// One report per entry, merged; check ids are prefixed by the entry id
/// when there is more than one.
fn gather<'a, T: 'a>(
    command: &str,
    entries: Vec<(&'a String, &'a T)>,
    mut check: impl FnMut(&'a T) -> anyhow::Result<Report>,
) -> anyhow::Result<Report> {
    let mut report = Report::new(command);
    let many = entries.len() > 1;
    for (id, x) in entries {
        let r = check(x).with_context(|| id.clone())?;
        report.absorb(if many { id } else { "" }, r);
    }
    Ok(report.finish())
}

fn write_or_print(output: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| p.display().to_string()),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Option<Report>> {
    let name = cli.command.name();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let report = match &cli.command {
        Command::ValidatePicard(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.picard, &s.id, "picard presentation")?, |p| Ok(validate_picard(p)))?
        }
        Command::CheckCube(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.cubes, &s.id, "cube")?, |(p, c)| Ok(validate_cube(p, c)))?
        }
        Command::CheckCubicalRelations { sel, group, budget: b } => {
            let b = budget(*b as u64)? as usize;
            match group {
                Some(g) => {
                    let p = PicardPresentation::discrete(g.parse::<FgAbelianGroup>()?);
                    let mut r = check_cubical_relations(&p, b, &mut rng)?;
                    r.command = name.into();
                    r
                }
                None => {
                    let ws = load(&sel.input)?;
                    gather(name, select(&ws.picard, &sel.id, "picard presentation")?, |p| {
                        Ok(check_cubical_relations(p, b, &mut rng)?)
                    })?
                }
            }
        }
        Command::Qhomology { group, max_level } => {
            let a: FgAbelianGroup = group.parse()?;
            let cap = budget(multidet::qcomplex::DEFAULT_CUBE_CAP)?;
            let mut r = Report::new(name);
            let q = QComplex::build(&a, *max_level + 1, cap, true)?;
            let all_zero = q.check_square_zero().iter().all(|(_, ok)| *ok);
            r.push(if all_zero {
                ReportItem::pass("boundary-square", format!("levels ≤ {}", max_level + 1), "∂∂ = 0")
            } else {
                ReportItem::fail("boundary-square", format!("levels ≤ {}", max_level + 1), "∂∂ ≠ 0")
            });
            let complex = q.chain_complex()?;
            for k in 0..=*max_level {
                let h = complex.homology_at(k)?;
                r.push(ReportItem::note(format!("H{k}"), a.to_string(), h.to_string()));
            }
            r.push(ReportItem::note("generators", "", format!("{:?}", q.levels.iter().map(Vec::len).collect::<Vec<_>>())));
            r.finish()
        }
        Command::ValidatePresentation { sel, builtin: b } => match b {
            Some(b) => {
                let mut r = validate_presentation(&builtin(b)?);
                r.command = name.into();
                r
            }
            None => {
                let ws = load(&sel.input)?;
                gather(name, select(&ws.presentations, &sel.id, "presentation")?, |t| Ok(validate_presentation(t)))?
            }
        },
        Command::CheckVerdier { input, presentation, diagram } => {
            let ws = load(input)?;
            let t = ws.presentations.get(presentation).ok_or_else(|| anyhow!("unresolved reference: no presentation {presentation}"))?;
            let ids: Vec<String> = match diagram {
                Some(d) => vec![d.clone()],
                None => t.nine_diagrams.iter().map(|d| d.id.clone()).collect(),
            };
            let mut r = Report::new(name);
            let many = ids.len() > 1;
            for d in &ids {
                r.absorb(if many { d } else { "" }, check_verdier(t, d)?);
            }
            r.finish()
        }
        Command::OctTo2cube { input, presentation, octahedron, output } => {
            let ws = load(input)?;
            let mut t = (**ws.presentations.get(presentation).ok_or_else(|| anyhow!("unresolved reference: no presentation {presentation}"))?).clone();
            let grid = octahedron_to_2cube(&mut t, octahedron)?;
            let mut r = Report::new(name);
            r.push(ReportItem::note("diagram", octahedron.as_str(), grid.clone()));
            r.absorb("", check_verdier(&t, &grid)?);
            if output.is_some() {
                let mut file = ws.file.clone();
                file.presentations.retain(|p| &p.id != presentation);
                file.add_presentation(&t);
                write_or_print(output, &Workspace::from_file(file)?.emit())?;
            }
            r.finish()
        }
        Command::CheckMultiexact { sel, sample_bound } => {
            let ws = load(&sel.input)?;
            let mut r = Report::new(name);
            let pf = select_opt(&ws.picard_functors, &sel.id);
            let tf = select_opt(&ws.tri_functors, &sel.id);
            if sel.id.is_some() && pf.is_empty() && tf.is_empty() {
                bail!("unresolved reference: no functor {}", sel.id.as_deref().unwrap_or_default());
            }
            let many = pf.len() + tf.len() > 1;
            for (id, f) in pf {
                let bound = f.sources.iter().chain([&f.target]).any(|p| !p.is_finite()).then_some(*sample_bound);
                r.absorb(if many { id } else { "" }, check_multiexact_picard_functor(f, bound)?);
            }
            for (id, f) in tf {
                r.absorb(if many { id } else { "" }, check_multiexact_tri_functor(f));
            }
            r.finish()
        }
        Command::CheckVerdierAdmission(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.tri_functors, &s.id, "functor")?, |f| Ok(check_functor_verdier_admission(f)))?
        }
        Command::CheckDet(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.determinants, &s.id, "determinant")?, |d| Ok(validate_determinant(d)?))?
        }
        Command::CheckMultidet(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.determinants, &s.id, "determinant")?, |d| Ok(validate_multideterminant(d)?))?
        }
        Command::CheckCubicalDet(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.determinants, &s.id, "determinant")?, |d| Ok(validate_cubical_determinant(d)?))?
        }
        Command::CrossCheck { sel, random } => {
            let ws = load(&sel.input)?;
            let mut r = gather(name, select(&ws.determinants, &sel.id, "determinant")?, |d| Ok(cross_check_definitions(d)))?;
            if *random > 0 {
                let Some(template) = select(&ws.determinants, &sel.id, "determinant")?.first().map(|(_, d)| (*d).clone()) else {
                    bail!("--random needs a determinant to take sources and target from");
                };
                let mut split = 0;
                let instances = random_instances(&template, *random, &mut rng)?;
                for x in &instances {
                    if !cross_check_definitions(&x.data).is_valid() {
                        split += 1;
                    }
                }
                let detail = format!("{split} split verdicts over {} random instances", instances.len());
                r.push(if split == 0 { ReportItem::pass("random", "", detail) } else { ReportItem::fail("random", "", detail) });
                r = r.finish();
            }
            r
        }
        Command::SumDets { input, left, right, output } => {
            let ws = load(input)?;
            let get = |id: &str| ws.determinants.get(id).ok_or_else(|| anyhow!("unresolved reference: no determinant {id}"));
            let mut s = sum_determinants(get(left)?, get(right)?)?;
            s.id = format!("{left}+{right}");
            let mut r = Report::new(name);
            r.absorb("", validate_multideterminant(&s)?);
            if output.is_some() {
                let target = target_of(&ws, left)?;
                let mut file = ws.file.clone();
                file.add_determinant(&s, &target);
                write_or_print(output, &Workspace::from_file(file)?.emit())?;
            }
            r.finish()
        }
        Command::ComposeDet { input, det, functor, output } => {
            let ws = load(input)?;
            let d = ws.determinants.get(det).ok_or_else(|| anyhow!("unresolved reference: no determinant {det}"))?;
            let f = ws.tri_functors.get(functor).ok_or_else(|| anyhow!("unresolved reference: no functor {functor}"))?;
            let mut c = compose_with_multiexact(d, f)?;
            c.id = format!("{det}∘{functor}");
            let mut r = Report::new(name);
            r.absorb("", validate_multideterminant(&c)?);
            if output.is_some() {
                let target = target_of(&ws, det)?;
                let mut file = ws.file.clone();
                file.add_determinant(&c, &target);
                write_or_print(output, &Workspace::from_file(file)?.emit())?;
            }
            r.finish()
        }
        Command::CheckDetMorphism(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.det_morphisms, &s.id, "determinant morphism")?, |m| Ok(check_det_morphism(m)?))?
        }
        Command::CheckFactorization(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.factorizations, &s.id, "factorization")?, |f| {
                Ok(check_universal_factorization(&f.universal, &f.det, &f.functor, &f.alpha)?)
            })?
        }
        Command::ValidateCatring(s) => {
            let ws = load(&s.input)?;
            gather(name, select(&ws.catrings, &s.id, "categorical ring")?, |r| {
                let mut rep = validate_categorical_ring(r);
                if rep.is_valid() {
                    let ring = pi0_ring(r);
                    rep.push(ReportItem::note("pi0", ring.group.to_string(), format!("products {:?}, unit {}", table(&ring.table), ring.unit)));
                    if let Ok(m) = pi1_bimodule(r) {
                        rep.push(ReportItem::note("pi1", m.group.to_string(), format!("left {:?}, right {:?}", table(&m.left), table(&m.right))));
                    }
                }
                Ok(rep)
            })?
        }
        Command::K0Ring { input, presentation, tensor } => {
            let ws = load(input)?;
            let t = ws.presentations.get(presentation).ok_or_else(|| anyhow!("unresolved reference: no presentation {presentation}"))?;
            let f = ws.tri_functors.get(tensor).ok_or_else(|| anyhow!("unresolved reference: no functor {tensor}"))?;
            let k0 = compute_k0_ring(t, f)?;
            let mut r = Report::new(name);
            r.push(ReportItem::note("group", presentation.as_str(), k0.group.to_string()));
            r.push(ReportItem::note("product", "basis", format!("{:?}", table(&k0.product))));
            r.push(ReportItem::note("unit", "", k0.unit.as_ref().map_or("none".to_string(), |u| u.to_string())));
            r.push(ReportItem::note("determined", "", k0.determined.to_string()));
            for (o, c) in &k0.classes {
                r.push(ReportItem::note("class", o.as_str(), c.to_string()));
            }
            r.absorb("", k0.report);
            r.finish()
        }
        Command::Selftest { only } => {
            let opts = selftest::Options {
                seed: cli.seed,
                cap: budget(multidet::qcomplex::DEFAULT_CUBE_CAP)?,
                only: only.iter().copied().collect(),
            };
            let (report, times) = selftest::run_timed(&opts);
            for (k, t) in times {
                eprintln!("criterion-{k}: {} ms", t.as_millis());
            }
            report
        }
        Command::EmitWorkspace { input, output } => {
            write_or_print(output, &load(input)?.emit())?;
            return Ok(None);
        }
        Command::EmitFixtures { dir } => {
            std::fs::create_dir_all(dir).with_context(|| dir.display().to_string())?;
            let mut r = Report::new(name);
            for (stem, file) in fixtures::all()? {
                let path = dir.join(format!("{stem}.json"));
                std::fs::write(&path, Workspace::from_file(file)?.emit()).with_context(|| path.display().to_string())?;
                r.push(ReportItem::pass("written", path.display().to_string(), ""));
            }
            r.finish()
        }
    };
    Ok(Some(report))
}

fn select_opt<'a, T>(map: &'a BTreeMap<String, T>, id: &Option<String>) -> Vec<(&'a String, &'a T)> {
    match id {
        Some(id) => map.get_key_value(id).into_iter().collect(),
        None => map.iter().collect(),
    }
}

fn target_of(ws: &Workspace, det: &str) -> anyhow::Result<String> {
    ws.file
        .determinants
        .iter()
        .find(|d| d.id == det)
        .map(|d| d.target.clone())
        .ok_or_else(|| anyhow!("unresolved reference: no determinant {det}"))
}

fn table(t: &[Vec<multidet::algebra::Elem>]) -> Vec<Vec<Vec<i64>>> {
    t.iter().map(|row| row.iter().map(|e| e.0.clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        super::Cli::command().debug_assert();
    }
}
