//! The `laplat` command line. [`run`] takes explicit streams so tests can
//! drive it in-process.

use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chipfire::{effective_equivalent, equivalent, Configuration};
use crate::delaunay::{hull_f_vector_check, polytope};
use crate::error::Error;
use crate::graph::{laplacian_spectrum, Multigraph};
use crate::invariants::{invariant_report, ramanujan_bounds};
use crate::lattice::LaplacianLattice;
use crate::oracles::{
    critical_points, dyadic_sequence, limit_check, max_h_on_grid, voronoi_neighbors_grid,
};
use crate::reconstruct::{census, graphs_isomorphic, reconstruct_laplacian};
use crate::{io, svg, Limits};

#[derive(Parser, Debug)]
#[command(
    name = "laplat",
    version,
    about = "Exact geometry of Laplacian lattices of multigraphs"
)]
struct Cli {
    /// Output style for JSON results.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(flatten)]
    guards: GuardArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// Size guards. Raising one above its default needs `--guard-override`.
#[derive(Args, Debug)]
struct GuardArgs {
    /// Allow guard values above their defaults.
    #[arg(long, global = true)]
    guard_override: bool,

    /// Vertex limit for cut enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().enumeration_vertices)]
    max_enumeration_vertices: usize,

    /// Vertex limit for building the Delaunay polytope.
    #[arg(long, global = true, default_value_t = Limits::default().polytope_vertices)]
    max_polytope_vertices: usize,

    /// Vertex limit for the isomorphism search.
    #[arg(long, global = true, default_value_t = Limits::default().isomorphism_vertices)]
    max_isomorphism_vertices: usize,

    /// Vertex limit for the exhaustive point-location fallback.
    #[arg(long, global = true, default_value_t = Limits::default().locate_vertices)]
    max_locate_vertices: usize,

    /// Vertex limit for the critical-point oracle.
    #[arg(long, global = true, default_value_t = Limits::default().critical_vertices)]
    max_critical_vertices: usize,

    /// Largest grid resolution.
    #[arg(long, global = true, default_value_t = Limits::default().grid_resolution)]
    max_grid_resolution: usize,

    /// Largest dimension for the exact convex hull.
    #[arg(long, global = true, default_value_t = Limits::default().hull_dimension)]
    max_hull_dimension: usize,

    /// Vertex limit for the census.
    #[arg(long, global = true, default_value_t = Limits::default().census_vertices)]
    max_census_vertices: usize,

    /// Multiplicity limit for the census.
    #[arg(long, global = true, default_value_t = Limits::default().census_multiplicity)]
    max_census_multiplicity: u32,
}

impl GuardArgs {
    fn limits(&self) -> Result<Limits, String> {
        let d = Limits::default();
        let limits = Limits {
            enumeration_vertices: self.max_enumeration_vertices,
            polytope_vertices: self.max_polytope_vertices,
            isomorphism_vertices: self.max_isomorphism_vertices,
            locate_vertices: self.max_locate_vertices,
            critical_vertices: self.max_critical_vertices,
            grid_resolution: self.max_grid_resolution,
            hull_dimension: self.max_hull_dimension,
            census_vertices: self.max_census_vertices,
            census_multiplicity: self.max_census_multiplicity,
        };
        let raised = [
            (
                "--max-enumeration-vertices",
                limits.enumeration_vertices > d.enumeration_vertices,
            ),
            (
                "--max-polytope-vertices",
                limits.polytope_vertices > d.polytope_vertices,
            ),
            (
                "--max-isomorphism-vertices",
                limits.isomorphism_vertices > d.isomorphism_vertices,
            ),
            (
                "--max-locate-vertices",
                limits.locate_vertices > d.locate_vertices,
            ),
            (
                "--max-critical-vertices",
                limits.critical_vertices > d.critical_vertices,
            ),
            (
                "--max-grid-resolution",
                limits.grid_resolution > d.grid_resolution,
            ),
            (
                "--max-hull-dimension",
                limits.hull_dimension > d.hull_dimension,
            ),
            (
                "--max-census-vertices",
                limits.census_vertices > d.census_vertices,
            ),
            (
                "--max-census-multiplicity",
                limits.census_multiplicity > d.census_multiplicity,
            ),
        ];
        if !self.guard_override {
            if let Some((flag, _)) = raised.iter().find(|(_, up)| *up) {
                return Err(format!(
                    "{flag} is above its default; pass --guard-override to allow it"
                ));
            }
        }
        Ok(limits)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shortest vector, packing and covering radii, densities, Ramanujan check.
    Invariants {
        /// Graph JSON file, or `-` for stdin.
        graph: String,
        /// Also report the Ramanujan density bounds.
        #[arg(long)]
        bounds: bool,
    },
    /// Laplacian spectrum and Ramanujan evidence.
    Spectrum { graph: String },
    /// Vertices, facets and edges of the Delaunay polytope of the origin.
    Delaunay {
        graph: String,
        /// Compare against the exact convex hull of the vertex set.
        #[arg(long)]
        hull_check: bool,
    },
    /// Recover the graph from a Delaunay polytope vertex set.
    Reconstruct {
        /// Vertex set JSON: a list of points, or `delaunay` output.
        vertices: String,
    },
    /// Isomorphism test with the vertex map.
    Isomorphic { first: String, second: String },
    /// Group all connected multigraphs of a size by their lattice.
    Census {
        #[arg(long, default_value_t = 3)]
        vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_mult: u32,
    },
    /// Whether two configurations differ by a firing vector.
    Equiv {
        graph: String,
        /// Configuration: an inline JSON array or a file.
        first: String,
        second: String,
    },
    /// Whether a configuration is equivalent to an effective one.
    Effective { graph: String, config: String },
    /// Brute-force verifiers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// SVG picture of a lattice of a 3-vertex graph.
    Svg {
        graph: String,
        /// Grid resolution for the Voronoi boundary dots.
        #[arg(long, default_value_t = 48)]
        resolution: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Voronoi neighbours of the origin on a rational grid.
    Voronoi {
        graph: String,
        #[arg(long, default_value_t = 24)]
        resolution: usize,
    },
    /// Distance values at the acyclic-orientation points.
    Critical {
        graph: String,
        /// Also scan a grid of this resolution for the largest distance.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Shortest vector and packing radius under shrinking perturbations.
    Limit {
        graph: String,
        /// Perturbations 2^-1 .. 2^-steps.
        #[arg(long, default_value_t = 6)]
        steps: u32,
    },
}

enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

enum Output {
    Json(Value),
    Text(String),
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn read(&mut self, source: &str) -> Result<String, Failure> {
        if source == "-" {
            if self.stdin_used {
                return Err(Failure::Usage("stdin can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(Path::new(source))
            .map_err(|e| Failure::Io(format!("{source}: {e}")))
    }

    fn graph(&mut self, source: &str) -> Result<Multigraph, Failure> {
        Ok(io::parse_graph(&self.read(source)?)?)
    }

    /// Inline JSON when the argument starts with `[`, a file otherwise.
    fn configuration(&mut self, source: &str) -> Result<Configuration, Failure> {
        let text = if source.trim_start().starts_with('[') {
            source.to_string()
        } else {
            self.read(source)?
        };
        Ok(io::parse_configuration(&text)?)
    }
}

fn execute(command: Command, limits: &Limits, inputs: &mut Inputs) -> Result<Output, Failure> {
    let out = match command {
        Command::Invariants { graph, bounds } => {
            let g = inputs.graph(&graph)?;
            let mut v = io::invariant_report(&invariant_report(&g, limits)?);
            if bounds {
                v["bounds"] = io::ramanujan_bounds(&ramanujan_bounds(&g)?)["bounds"].take();
            }
            v
        }
        Command::Spectrum { graph } => {
            let g = inputs.graph(&graph)?;
            let spectrum = laplacian_spectrum(&g.laplacian())?;
            let mut v = io::ramanujan_bounds(&ramanujan_bounds(&g)?);
            v["spectrum"] = spectrum.into_iter().map(io::real).collect();
            v
        }
        Command::Delaunay { graph, hull_check } => {
            let g = inputs.graph(&graph)?;
            let p = polytope(&LaplacianLattice::from_graph(&g)?, limits)?;
            let check = if hull_check {
                Some(hull_f_vector_check(&p, limits)?)
            } else {
                None
            };
            io::polytope(&p, check.as_ref())
        }
        Command::Reconstruct { vertices } => {
            let points = io::parse_points(&inputs.read(&vertices)?)?;
            let q = reconstruct_laplacian(&points, limits)?;
            io::graph_to_json(&q.to_graph())
        }
        Command::Isomorphic { first, second } => {
            let a = inputs.graph(&first)?;
            let b = inputs.graph(&second)?;
            match graphs_isomorphic(&a.laplacian(), &b.laplacian(), limits)? {
                Some(perm) => json!({"isomorphic": true, "perm": perm}),
                None => json!({"isomorphic": false, "perm": null}),
            }
        }
        Command::Census { vertices, max_mult } => io::census(&census(vertices, max_mult, limits)?),
        Command::Equiv {
            graph,
            first,
            second,
        } => {
            let g = inputs.graph(&graph)?;
            let c1 = inputs.configuration(&first)?;
            let c2 = inputs.configuration(&second)?;
            let w = equivalent(&g, &c1, &c2)?;
            json!({"equivalent": w.is_some(), "firing": w})
        }
        Command::Effective { graph, config } => {
            let g = inputs.graph(&graph)?;
            let c = inputs.configuration(&config)?;
            io::effectiveness(&effective_equivalent(&g, &c)?)
        }
        Command::Oracle(OracleCommand::Voronoi { graph, resolution }) => {
            let g = inputs.graph(&graph)?;
            let l = LaplacianLattice::from_graph(&g)?;
            let nb = voronoi_neighbors_grid(&l, resolution, limits)?;
            json!({
                "resolution": resolution,
                "count": nb.len(),
                "neighbors": nb.iter().map(io::lattice_point).collect::<Vec<_>>(),
            })
        }
        Command::Oracle(OracleCommand::Critical { graph, grid }) => {
            let g = inputs.graph(&graph)?;
            let mut v = io::critical(&critical_points(&g, limits)?);
            if let Some(res) = grid {
                let m = max_h_on_grid(&LaplacianLattice::from_graph(&g)?, res, limits)?;
                v["grid"] = json!({
                    "resolution": res,
                    "max": io::rational(&m.value),
                    "point": io::rational_point(&m.point),
                });
            }
            v
        }
        Command::Oracle(OracleCommand::Limit { graph, steps }) => {
            let g = inputs.graph(&graph)?;
            if steps == 0 || steps > 62 {
                return Err(Failure::Usage("--steps must be between 1 and 62".into()));
            }
            let report = limit_check(&g, &dyadic_sequence(steps), limits)?;
            io::limit(&report, g.vertex_count())
        }
        Command::Svg { graph, resolution } => {
            let g = inputs.graph(&graph)?;
            return Ok(Output::Text(svg::render(&svg::scene(
                &g, resolution, limits,
            )?)));
        }
    };
    Ok(Output::Json(out))
}

/// Runs the CLI on `args` (including the program name). Exit codes: 0 on
/// success, 1 on a domain or I/O error (error JSON on stderr), 2 on a usage
/// error.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = cli
        .guards
        .limits()
        .map_err(Failure::Usage)
        .and_then(|limits| {
            let mut inputs = Inputs {
                stdin,
                stdin_used: false,
            };
            execute(cli.command, &limits, &mut inputs)
        });
    match result {
        Ok(Output::Json(v)) => {
            let text = match cli.format {
                Format::Json => v.to_string(),
                Format::Pretty => serde_json::to_string_pretty(&v).expect("JSON values serialize"),
            };
            let _ = writeln!(stdout, "{text}");
            0
        }
        Ok(Output::Text(s)) => {
            let _ = write!(stdout, "{s}");
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "{}", json!({"error": "io", "message": msg}));
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(
                stderr,
                "{}",
                json!({"error": e.kind(), "message": e.to_string()})
            );
            1
        }
    }
}
