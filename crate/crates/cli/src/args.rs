use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "lk", version, about = "Design knots and links by twisting the edges of polygon meshes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Label edits, applied to a copy of the input in command-line order.
#[derive(Debug, Clone, Default, Args)]
pub struct Labels {
    /// Give every edge twist INT.
    #[arg(long = "set-all", value_name = "INT", allow_negative_numbers = true)]
    pub set_all: Vec<i64>,
    /// Give edge A,B twist INT (A < B). Repeatable.
    #[arg(long = "set", value_name = "A,B=INT")]
    pub set: Vec<String>,
    /// Null the side of FACE on edge A,B (OCC-th occurrence). Repeatable.
    #[arg(long = "null", value_name = "FACE,A,B[,OCC]")]
    pub null: Vec<String>,
    /// Merge a twist assignment document. Repeatable.
    #[arg(long = "assign", value_name = "PATH")]
    pub assign: Vec<PathBuf>,
}

/// Where a periodic scaffold comes from, and its class twists.
#[derive(Debug, Clone, Default, Args)]
pub struct Scaffold {
    /// Lattice preset: sq, hex, cP, hP, oF, cF or cI.
    #[arg(long, value_name = "NAME", conflicts_with = "input")]
    pub preset: Option<String>,
    /// Mesh document with a periodic block.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// JSON list of generator points in fractional coordinates (with --preset).
    #[arg(long, value_name = "PATH", requires = "preset")]
    pub generators: Option<PathBuf>,
    /// Twist per edge class, indexed by class id.
    #[arg(long = "class-twists", value_name = "CSV", allow_hyphen_values = true)]
    pub class_twists: Vec<String>,
    /// Same twist on every edge class.
    #[arg(long, visible_alias = "set-all", value_name = "INT", allow_negative_numbers = true)]
    pub uniform: Vec<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Mesh document.
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Report {
    /// Write the machine-readable report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a mesh document and report its connectivity.
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        report: Report,
    },
    /// Connectivity, per-edge orbit structure and strand summary.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        report: Report,
    },
    /// Trace the strands of a labeled mesh.
    Trace {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        report: Report,
        /// Write the labeled mesh document.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Single-cycle knot from a random dual spanning tree.
    DesignKnot {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Twist on spanning-tree edges (odd).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        odd: i64,
        /// Twist on the other edges (even).
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        even: i64,
        #[command(flatten)]
        design: DesignOutput,
    },
    /// One closed ring per face: every edge twisted by a nonzero multiple of its degree.
    DesignChainmail {
        #[command(flatten)]
        input: Input,
        /// Random signs from this seed instead of a uniform sign.
        #[arg(long)]
        seed: Option<u64>,
        /// Uniform sign, +1 or -1.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true, conflicts_with = "seed")]
        sign: i8,
        /// Twist magnitude as a multiple of each edge's degree.
        #[arg(long, default_value_t = 1)]
        multiple: u64,
        #[command(flatten)]
        design: DesignOutput,
    },
    /// Add M times the degree to one edge's twist (same strands, tighter winding).
    Tighten {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        labels: Labels,
        #[arg(long, value_name = "A,B")]
        edge: String,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[command(flatten)]
        design: DesignOutput,
    },
    /// Count twist assignments up to mesh symmetry.
    Orbits {
        #[command(flatten)]
        input: Input,
        /// Twist values to try on every edge.
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        palette: String,
        /// single-cycle, one-per-face or any.
        #[arg(long, default_value = "single-cycle")]
        predicate: String,
        /// rotations, full, full-with-negation or all.
        #[arg(long, default_value = "all")]
        group: String,
        /// Single-threaded enumeration.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        report: Report,
    },
    /// Build a periodic scaffold and trace it in the quotient.
    Lattice {
        #[command(flatten)]
        scaffold: Scaffold,
        /// Print the strand summary.
        #[arg(long)]
        trace: bool,
        /// Write the fundamental domain as a mesh document.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        report: Report,
    },
    /// Replicate a periodic scaffold into a finite mesh.
    Tile {
        #[command(flatten)]
        scaffold: Scaffold,
        /// Cells per axis, e.g. 2x2x2.
        #[arg(long, value_name = "AxBxC")]
        extent: String,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[command(flatten)]
        report: Report,
    },
    /// Realize strands as curves and write OBJ.
    Realize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        labels: Labels,
        /// OBJ file; a .mtl file is written next to it.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[arg(long = "tube-radius", value_name = "FLOAT")]
        tube_radius: Option<f64>,
        #[arg(long = "tube-sides", default_value_t = 12)]
        tube_sides: usize,
        #[arg(long, default_value_t = 0.25)]
        inset: f64,
        /// Write polylines instead of tubes.
        #[arg(long)]
        polylines: bool,
        /// Also write the strand geometry document.
        #[arg(long, value_name = "PATH")]
        geometry: Option<PathBuf>,
        #[command(flatten)]
        report: Report,
    },
    /// Run the local HTTP service.
    Serve {
        /// Mesh to open as session 1.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = lk_service::DEFAULT_PORT)]
        port: u16,
        /// Save every revision here.
        #[arg(long = "save-dir", value_name = "DIR")]
        save_dir: Option<PathBuf>,
        /// Serve the viewer's static files from this directory.
        #[arg(long, value_name = "DIR")]
        ui: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct DesignOutput {
    /// Write the twist assignment document.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Write the input mesh with the assignment applied.
    #[arg(long = "lkm-out", value_name = "PATH")]
    pub lkm_out: Option<PathBuf>,
    /// Trace the result and print the component count.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub report: Report,
}
