//! File formats: whitespace edge lists, colour files, key=value configs and
//! the CSV outputs. Every writer goes through a temporary file in the target
//! directory and is renamed into place.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::MaxCoverageInstance;
use crate::graph::WeightedDigraph;
use crate::model::{Colour, Colouring};

pub const RESULTS_HEADER: [&str; 7] =
    ["method", "budget", "expected_blue", "expected_blue_fraction", "evaluator", "rounds", "seed"];
pub const CONVERGENCE_HEADER: [&str; 7] =
    ["strategy", "n", "graphs", "runs", "mean_rounds", "stderr", "cap_hits"];
pub const SIMULATION_HEADER: [&str; 3] = ["round", "mean_blue", "stderr"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// Weights must be positive.
    #[default]
    AsGiven,
    /// Every weight becomes 1.
    Unweighted,
    /// `w` becomes `|w|`; zero is rejected.
    Absolute,
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_given" | "as-given" => Ok(WeightMode::AsGiven),
            "unweighted" => Ok(WeightMode::Unweighted),
            "absolute" => Ok(WeightMode::Absolute),
            _ => Err(Error::InvalidParameter(format!("unknown weight mode `{s}`"))),
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::AsGiven => "as_given",
            WeightMode::Unweighted => "unweighted",
            WeightMode::Absolute => "absolute",
        })
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Writes through a temporary sibling file, renamed over `path` on success.
pub fn write_atomic<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        body(&mut w)?;
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), line, msg: msg.into() }
}

/// Parses `src dst [weight]` lines. Labels get dense ids in order of first
/// appearance; a line with a single token declares a node without edges.
/// `path` only labels error messages.
pub fn parse_edge_list(text: &str, path: &Path, mode: WeightMode) -> Result<WeightedDigraph> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    fn intern<'a>(tok: &'a str, ids: &mut HashMap<&'a str, usize>, labels: &mut Vec<String>) -> usize {
        let next = labels.len();
        *ids.entry(tok).or_insert_with(|| {
            labels.push(tok.to_owned());
            next
        })
    }
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (src, dst, raw) = match toks[..] {
            [v] => {
                intern(v, &mut ids, &mut labels);
                continue;
            }
            [s, d] => (s, d, 1.0),
            [s, d, w] => {
                let w: f64 = w
                    .parse()
                    .map_err(|_| parse_err(path, lineno, format!("weight `{w}` is not a number")))?;
                (s, d, w)
            }
            _ => return Err(parse_err(path, lineno, format!("expected `src dst [weight]`, got {} fields", toks.len()))),
        };
        if !raw.is_finite() {
            return Err(parse_err(path, lineno, format!("weight {raw} is not finite")));
        }
        let w = match mode {
            WeightMode::Unweighted => 1.0,
            WeightMode::AsGiven if raw <= 0.0 => {
                return Err(parse_err(path, lineno, format!("non-positive weight {raw}")))
            }
            WeightMode::AsGiven => raw,
            WeightMode::Absolute if raw == 0.0 => {
                return Err(parse_err(path, lineno, "zero weight"))
            }
            WeightMode::Absolute => raw.abs(),
        };
        let s = intern(src, &mut ids, &mut labels);
        let d = intern(dst, &mut ids, &mut labels);
        edges.push((s, d, w));
    }
    let mut g = WeightedDigraph::new(labels.len());
    for (s, d, w) in edges {
        g.add_edge(s, d, w)?;
    }
    g.set_labels(labels)?;
    Ok(g)
}

pub fn load_graph(path: &Path, mode: WeightMode) -> Result<WeightedDigraph> {
    parse_edge_list(&read_text(path)?, path, mode)
}

/// Every node is declared first, in id order, so reloading reproduces the ids.
pub fn write_edge_list(g: &WeightedDigraph, w: &mut dyn Write) -> Result<()> {
    for label in g.labels() {
        if label.is_empty() || label.starts_with('#') || label.contains(char::is_whitespace) {
            return Err(Error::InvalidParameter(format!("label `{label}` cannot be written to an edge list")));
        }
    }
    let io = |e| Error::io("<edge list>", e);
    writeln!(w, "# {} nodes, {} edges", g.node_count(), g.edge_count()).map_err(io)?;
    for label in g.labels() {
        writeln!(w, "{label}").map_err(io)?;
    }
    for (s, d, wt) in g.edges() {
        writeln!(w, "{} {} {}", g.label(s), g.label(d), wt).map_err(io)?;
    }
    Ok(())
}

pub fn save_graph(g: &WeightedDigraph, path: &Path) -> Result<()> {
    write_atomic(path, |w| write_edge_list(g, w))
}

/// Reads a `node,colour` CSV against the labels of `g`.
pub fn parse_colours(text: &str, path: &Path, g: &WeightedDigraph) -> Result<Colouring> {
    let ids: HashMap<&str, usize> =
        g.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = rdr.headers()?;
    if header.iter().collect::<Vec<_>>() != ["node", "colour"] {
        return Err(parse_err(path, 1, "expected header `node,colour`"));
    }
    let mut colouring = Colouring::uniform(g.node_count(), Colour::Uncoloured);
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 2 {
            return Err(parse_err(path, line, "expected two fields"));
        }
        let v = *ids.get(&rec[0]).ok_or_else(|| Error::UnknownLabel(rec[0].to_owned()))?;
        let mut chars = rec[1].chars();
        let c = match (chars.next().and_then(Colour::from_symbol), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(parse_err(path, line, format!("colour `{}` is not one of b, r, u", &rec[1]))),
        };
        colouring.set(v, c);
    }
    Ok(colouring)
}

pub fn load_colours(path: &Path, g: &WeightedDigraph) -> Result<Colouring> {
    parse_colours(&read_text(path)?, path, g)
}

/// Lists every node, uncoloured ones included.
pub fn save_colours(g: &WeightedDigraph, c: &Colouring, path: &Path) -> Result<()> {
    if c.len() != g.node_count() {
        return Err(Error::SizeMismatch { graph: g.node_count(), colouring: c.len() });
    }
    write_csv(path, &["node", "colour"], (0..c.len()).map(|v| vec![g.label(v).to_owned(), c.get(v).to_string()]))
}

/// A header plus string rows, written atomically.
pub fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(header)?;
        for row in rows {
            out.write_record(&row)?;
        }
        out.flush().map_err(|e| Error::io(path, e))?;
        Ok(())
    })
}

/// One line of a results table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub method: String,
    pub budget: usize,
    pub expected_blue: f64,
    pub expected_blue_fraction: f64,
    pub evaluator: String,
    pub rounds: usize,
    pub seed: u64,
}

impl ResultRow {
    fn record(&self) -> Vec<String> {
        vec![
            self.method.clone(),
            self.budget.to_string(),
            self.expected_blue.to_string(),
            self.expected_blue_fraction.to_string(),
            self.evaluator.clone(),
            self.rounds.to_string(),
            self.seed.to_string(),
        ]
    }
}

pub fn write_results(path: &Path, rows: &[ResultRow]) -> Result<()> {
    write_csv(path, &RESULTS_HEADER, rows.iter().map(ResultRow::record))
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>> {
    let text = read_text(path)?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    if rdr.headers()?.iter().collect::<Vec<_>>() != RESULTS_HEADER {
        return Err(parse_err(path, 1, "not a results table"));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let num = |i: usize| -> Result<f64> {
            rec[i].parse().map_err(|_| parse_err(path, line, format!("bad number `{}`", &rec[i])))
        };
        rows.push(ResultRow {
            method: rec[0].to_owned(),
            budget: num(1)? as usize,
            expected_blue: num(2)?,
            expected_blue_fraction: num(3)?,
            evaluator: rec[4].to_owned(),
            rounds: num(5)? as usize,
            seed: rec[6].parse().map_err(|_| parse_err(path, line, "bad seed"))?,
        });
    }
    Ok(rows)
}

/// Mean convergence time of one colouring strategy at one graph size.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub strategy: String,
    pub n: usize,
    pub graphs: usize,
    pub runs: usize,
    pub mean_rounds: f64,
    pub stderr: f64,
    pub cap_hits: usize,
}

pub fn write_convergence(path: &Path, rows: &[ConvergenceRow]) -> Result<()> {
    write_csv(
        path,
        &CONVERGENCE_HEADER,
        rows.iter().map(|r| {
            vec![
                r.strategy.clone(),
                r.n.to_string(),
                r.graphs.to_string(),
                r.runs.to_string(),
                r.mean_rounds.to_string(),
                r.stderr.to_string(),
                r.cap_hits.to_string(),
            ]
        }),
    )
}

/// `key = value` lines; `#` starts a comment line. Later keys override
/// earlier ones except where a caller reads them with [`KeyValues::all`].
#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    path: PathBuf,
    entries: Vec<(String, String, usize)>,
}

impl KeyValues {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(path, i + 1, "expected `key = value`"))?;
            entries.push((k.trim().to_owned(), v.trim().to_owned(), i + 1));
        }
        Ok(KeyValues { path: path.to_path_buf(), entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        KeyValues::parse(&read_text(path)?, path)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().rev().find(|e| e.0 == key).map(|e| e.1.as_str())
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries.iter().filter(move |e| e.0 == key).map(|e| e.1.as_str())
    }

    pub fn keys(&self) -> BTreeMap<&str, usize> {
        self.entries.iter().map(|e| (e.0.as_str(), e.2)).collect()
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        self.parsed(key)?.ok_or_else(|| parse_err(&self.path, 0, format!("missing key `{key}`")))
    }

    pub fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        let Some(e) = self.entries.iter().rev().find(|e| e.0 == key) else {
            return Ok(None);
        };
        e.1.parse()
            .map(Some)
            .map_err(|_| parse_err(&self.path, e.2, format!("bad value `{}` for `{key}`", e.1)))
    }

    /// Fails on the first key outside `known`.
    pub fn check_keys(&self, known: &[&str]) -> Result<()> {
        match self.entries.iter().find(|e| !known.contains(&e.0.as_str())) {
            Some(e) => Err(parse_err(&self.path, e.2, format!("unknown key `{}`", e.0))),
            None => Ok(()),
        }
    }
}

/// A max-coverage instance in key=value form: `objects`, `budget`,
/// `epsilon` and one `subset` line per subset listing 1-based objects.
pub fn parse_coverage_spec(text: &str, path: &Path) -> Result<MaxCoverageInstance> {
    let kv = KeyValues::parse(text, path)?;
    kv.check_keys(&["objects", "budget", "epsilon", "subset"])?;
    let mut subsets = Vec::new();
    for (_, v, line) in kv.entries.iter().filter(|e| e.0 == "subset") {
        let members = v
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(o) if o >= 1 => Ok(o - 1),
                _ => Err(parse_err(path, *line, format!("object `{t}` is not a positive integer"))),
            })
            .collect::<Result<Vec<_>>>()?;
        subsets.push(members);
    }
    let inst = MaxCoverageInstance {
        objects: kv.require("objects")?,
        subsets,
        budget: kv.require("budget")?,
        epsilon: kv.require("epsilon")?,
    };
    inst.validate()?;
    Ok(inst)
}

pub fn load_coverage_spec(path: &Path) -> Result<MaxCoverageInstance> {
    parse_coverage_spec(&read_text(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("t.txt")
    }

    #[test]
    fn unweighted_pair() {
        let g = parse_edge_list("a b\nb a\n", p(), WeightMode::Unweighted).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 2));
        assert!(g.edges().all(|e| e.2 == 1.0));
        assert_eq!(g.labels(), ["a", "b"]);
    }

    #[test]
    fn comments_and_weights() {
        let g = parse_edge_list("# comment\nx y 2.5\n", p(), WeightMode::AsGiven).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 2.5)]);
    }

    #[test]
    fn negative_weight_modes() {
        let err = parse_edge_list("x y -3", p(), WeightMode::AsGiven).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let g = parse_edge_list("x y -3", p(), WeightMode::Absolute).unwrap();
        assert_eq!(g.edges().next().unwrap().2, 3.0);
        assert!(parse_edge_list("x y 0", p(), WeightMode::Absolute).is_err());
        assert_eq!(
            parse_edge_list("x y 0", p(), WeightMode::Unweighted).unwrap().edges().next().unwrap().2,
            1.0
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        for (text, line) in [("a b\nc\nd e f g\n", 3), ("a b nan\n", 1), ("\n\na b w\n", 3)] {
            match parse_edge_list(text, p(), WeightMode::AsGiven) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn isolated_node_declarations() {
        let g = parse_edge_list("z\na b\n", p(), WeightMode::AsGiven).unwrap();
        assert_eq!(g.labels(), ["z", "a", "b"]);
        assert_eq!(g.out_degree(0), 0);
    }

    #[test]
    fn export_reload_is_identity() {
        let src = "# g\n7 3 0.5\n3 7\n1 7 2\n7 1 1e-3\n9\n";
        let g = parse_edge_list(src, p(), WeightMode::AsGiven).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let h = parse_edge_list(std::str::from_utf8(&buf).unwrap(), p(), WeightMode::AsGiven).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn colour_file() {
        let g = parse_edge_list("a b\nb c\nc a\n", p(), WeightMode::AsGiven).unwrap();
        let c = parse_colours("node,colour\nc,r\na,b\n", p(), &g).unwrap();
        assert_eq!(c.to_string(), "bur");
        assert!(matches!(parse_colours("node,colour\nq,r\n", p(), &g), Err(Error::UnknownLabel(_))));
        assert!(parse_colours("node,colour\na,x\n", p(), &g).is_err());
        assert!(parse_colours("id,c\na,b\n", p(), &g).is_err());
    }

    #[test]
    fn files_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let g = parse_edge_list("a b 2\nb c\nc a\n", p(), WeightMode::AsGiven).unwrap();
        let gp = dir.path().join("g.txt");
        save_graph(&g, &gp).unwrap();
        assert_eq!(load_graph(&gp, WeightMode::AsGiven).unwrap(), g);
        let c: Colouring = "rub".parse().unwrap();
        let cp = dir.path().join("c.csv");
        save_colours(&g, &c, &cp).unwrap();
        assert_eq!(load_colours(&cp, &g).unwrap(), c);
        let rows = vec![ResultRow {
            method: "greedy".into(),
            budget: 1,
            expected_blue: 1.0 / 3.0,
            expected_blue_fraction: 1.0 / 9.0,
            evaluator: "marginal".into(),
            rounds: 2,
            seed: 5,
        }];
        let rp = dir.path().join("r.csv");
        write_results(&rp, &rows).unwrap();
        assert_eq!(read_results(&rp).unwrap(), rows);
    }

    #[test]
    fn missing_file_is_io() {
        let e = load_graph(Path::new("/nonexistent/g.txt"), WeightMode::AsGiven).unwrap_err();
        assert!(e.is_io());
    }

    #[test]
    fn coverage_spec() {
        let text = "objects = 2\nbudget = 1\nepsilon = 0.5\nsubset = 1\nsubset = 1 2\n";
        let inst = parse_coverage_spec(text, p()).unwrap();
        assert_eq!(inst.subsets, vec![vec![0], vec![0, 1]]);
        assert_eq!((inst.objects, inst.budget, inst.epsilon), (2, 1, 0.5));
        assert!(parse_coverage_spec("objects = 2\nbudget = 1\nepsilon = 0.5\nsubset = 0\n", p()).is_err());
        assert!(parse_coverage_spec("colour = 2\n", p()).is_err());
    }
}
