//! Subcommands of the `cogsimp` binary.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::Serialize;

use cogsimp::annotator::{emit, AnnotationStyle};
use cogsimp::compare::{ops_histogram, pairwise_distances, profile_from_sets, DistanceMetric};
use cogsimp::ingest::{
    attach_parses, load_coref, load_corpus, load_frequency_table, load_gold_labels, load_paraphrase_db, parse_conllu,
};
use cogsimp::metrics::{agreement, bleu, corpus_stats, identical_pct, sari, wilcoxon_signed_rank, AgreementReport};
use cogsimp::tagger::{tag_corpus, TaggerConfig, TaggerResources};
use cogsimp::text::{PunctTokenizer, Tokenizer, WhitespaceTokenizer};
use cogsimp::{OperationSet, OperationToken, ParsedSentence, SimplificationInstance, TaggedInstance};

#[derive(Debug, Parser)]
#[command(
    name = "cogsimp",
    version,
    about = "Tag, annotate, score and compare text simplification corpora"
)]
pub struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Reserved. Every subcommand is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assign operation tokens to every instance of a corpus.
    Tag(TagArgs),
    /// Write operation-annotated training pairs.
    Annotate(AnnotateArgs),
    /// Score system outputs with SARI, BLEU and identical-output share.
    Score(ScoreArgs),
    /// Compare predicted operation labels with gold labels.
    Agree(AgreeArgs),
    /// Compare tagged subsets by operation usage.
    Compare(CompareArgs),
    /// Corpus statistics.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value_t = 1.2)]
    pub del_ratio: f64,
    #[arg(long, default_value_t = 0.30)]
    pub del_pct: f64,
    #[arg(long, default_value_t = 1.0)]
    pub add_ratio: f64,
    #[arg(long, default_value_t = 0.3)]
    pub clause_jaccard: f64,
    #[arg(long, default_value_t = cogsimp::ingest::DEFAULT_MAX_PHRASE_LEN)]
    pub max_phrase_len: usize,
}

impl ThresholdArgs {
    fn config(&self) -> TaggerConfig {
        TaggerConfig {
            del_ratio_threshold: self.del_ratio,
            del_pct_threshold: self.del_pct,
            add_ratio_threshold: self.add_ratio,
            clause_match_jaccard: self.clause_jaccard,
            max_phrase_len: self.max_phrase_len,
        }
    }
}

impl Default for ThresholdArgs {
    fn default() -> Self {
        let c = TaggerConfig::default();
        ThresholdArgs {
            del_ratio: c.del_ratio_threshold,
            del_pct: c.del_pct_threshold,
            add_ratio: c.add_ratio_threshold,
            clause_jaccard: c.clause_match_jaccard,
            max_phrase_len: c.max_phrase_len,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TagArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Paraphrase rules, `source<TAB>target[<TAB>score]`.
    #[arg(long)]
    pub ppdb: PathBuf,
    /// CoNLL-U files, or directories of them.
    #[arg(long, num_args = 1..)]
    pub parses: Vec<PathBuf>,
    #[arg(long)]
    pub coref: Option<PathBuf>,
    /// Keep complete deletions and additions.
    #[arg(long)]
    pub keep_degenerate: bool,
    /// Drop paraphrase rules scoring below this value.
    #[arg(long)]
    pub min_score: Option<f64>,
    /// Example cue phrase; repeat to replace the default list.
    #[arg(long = "example-cue")]
    pub example_cues: Vec<String>,
    /// Tag instances with references against them, keeping operations
    /// used by more than this share of references.
    #[arg(long, num_args = 0..=1, default_missing_value = "0.5")]
    pub multi_ref: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    T5,
    Bart,
}

impl From<StyleArg> for AnnotationStyle {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::T5 => AnnotationStyle::T5,
            StyleArg::Bart => AnnotationStyle::Bart,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairFormat {
    Tsv,
    Jsonl,
}

#[derive(Debug, Clone, Args)]
pub struct AnnotateArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Output of `tag`.
    #[arg(long)]
    pub tagged: PathBuf,
    #[arg(long, value_enum)]
    pub style: StyleArg,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: PairFormat,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum TokenizerArg {
    #[default]
    Punct,
    Whitespace,
}

impl TokenizerArg {
    fn build(self) -> Box<dyn Tokenizer> {
        match self {
            TokenizerArg::Punct => Box::new(PunctTokenizer),
            TokenizerArg::Whitespace => Box::new(WhitespaceTokenizer),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    /// One source per line.
    #[arg(long)]
    pub sources: PathBuf,
    /// One system output per line.
    #[arg(long)]
    pub outputs: PathBuf,
    /// Reference file; repeat for several references per instance.
    #[arg(long = "refs", required = true, num_args = 1..)]
    pub refs: Vec<PathBuf>,
    /// A second system's outputs, tested against the first with Wilcoxon's
    /// signed-rank test on sentence SARI.
    #[arg(long)]
    pub compare_outputs: Option<PathBuf>,
    #[arg(long)]
    pub per_sentence: bool,
    #[arg(long, value_enum, default_value = "punct")]
    pub tokenizer: TokenizerArg,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AgreeArgs {
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Tagged JSONL files, one per subset.
    #[arg(required = true, num_args = 2..)]
    pub inputs: Vec<PathBuf>,
    /// Subset names in input order; file stems by default.
    #[arg(long = "name")]
    pub names: Vec<String>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, num_args = 1..)]
    pub parses: Vec<PathBuf>,
    /// Word frequency ranks, for the word-rank ratio.
    #[arg(long)]
    pub freq: Option<PathBuf>,
    #[arg(long)]
    pub keep_degenerate: bool,
    #[arg(long, value_enum, default_value = "punct")]
    pub tokenizer: TokenizerArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .context("building thread pool")?;
    pool.install(|| match &cli.command {
        Command::Tag(a) => cmd_tag(a).map(|s| print!("{}", s.render())),
        Command::Annotate(a) => {
            cmd_annotate(a).map(|s| println!("wrote {} pairs, skipped {} degenerate", s.written, s.degenerate))
        }
        Command::Score(a) => cmd_score(a).map(|_| ()),
        Command::Agree(a) => cmd_agree(a).map(|r| print!("{}", agreement_table(&r))),
        Command::Compare(a) => cmd_compare(a),
        Command::Stats(a) => cmd_stats(a).map(|_| ()),
    })
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    open(path)?
        .lines()
        .collect::<std::io::Result<Vec<_>>>()
        .with_context(|| format!("reading {}", path.display()))
}

fn read_corpus(path: &Path, filter_degenerate: bool) -> Result<Vec<SimplificationInstance>> {
    load_corpus(open(path)?, filter_degenerate).with_context(|| format!("loading corpus {}", path.display()))
}

/// CoNLL-U files named directly or found (non-recursively) in directories.
fn conllu_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("listing {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "conllu" || x == "conll"))
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn attach(instances: &mut [SimplificationInstance], paths: &[PathBuf]) -> Result<()> {
    if paths.is_empty() {
        return Ok(());
    }
    let mut parses: Vec<ParsedSentence> = Vec::new();
    for f in conllu_files(paths)? {
        parses.extend(parse_conllu(open(&f)?).with_context(|| format!("parsing {}", f.display()))?);
    }
    let report = attach_parses(instances, parses);
    info!("attached parses to {} sides", report.attached_sides);
    if report.incomplete_sides > 0 {
        warn!(
            "{} sides have parses for only some sentences; ignored",
            report.incomplete_sides
        );
    }
    if report.unmatched_sentences + report.malformed_ids > 0 {
        warn!(
            "{} parsed sentences match no instance, {} have unreadable ids",
            report.unmatched_sentences, report.malformed_ids
        );
    }
    Ok(())
}

/// One line of tagged output.
#[derive(Serialize)]
struct TaggedRecord<'a> {
    id: &'a str,
    ops: OperationSet,
    evidence: &'a BTreeMap<OperationToken, Vec<String>>,
}

pub fn write_tagged<W: Write>(tagged: &[TaggedInstance], mut out: W) -> Result<()> {
    for t in tagged {
        let rec = TaggedRecord {
            id: &t.instance.id,
            ops: t.ops,
            evidence: &t.evidence,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TagSummary {
    pub n_instances: usize,
    pub counts: [usize; 9],
    /// Instances where some rule could not run for lack of a resource.
    pub with_skips: usize,
}

impl TagSummary {
    pub fn render(&self) -> String {
        let mut s = format!("tagged {} instances\n", self.n_instances);
        for op in OperationToken::ALL {
            s += &format!("{:<10} {}\n", op.name(), self.counts[op.index()]);
        }
        let frac = if self.n_instances == 0 {
            0.0
        } else {
            self.with_skips as f64 / self.n_instances as f64
        };
        s += &format!("parse-dependent rules skipped on {:.1}% of instances\n", 100.0 * frac);
        s
    }
}

pub fn cmd_tag(args: &TagArgs) -> Result<TagSummary> {
    let config = args.thresholds.config();
    config.validate()?;
    let mut instances = read_corpus(&args.corpus, !args.keep_degenerate)?;
    ensure!(
        !instances.is_empty(),
        "corpus {} has no instances",
        args.corpus.display()
    );
    attach(&mut instances, &args.parses)?;

    let (db, report) = load_paraphrase_db(open(&args.ppdb)?, config.max_phrase_len, args.min_score)
        .with_context(|| format!("loading paraphrase rules {}", args.ppdb.display()))?;
    info!("loaded {} paraphrase rules", report.rules);
    if report.malformed + report.too_long > 0 {
        warn!(
            "skipped {} malformed and {} over-long paraphrase lines",
            report.malformed, report.too_long
        );
    }
    let mut resources = TaggerResources::new(db, config)?;
    if !args.example_cues.is_empty() {
        resources = resources.with_example_cues(args.example_cues.clone())?;
    }
    if let Some(path) = &args.coref {
        let layers = load_coref(open(path)?).with_context(|| format!("loading coreference {}", path.display()))?;
        resources = resources.with_coref(layers);
    }

    let tagged = tag_corpus(&instances, &resources, args.multi_ref)?;
    write_tagged(&tagged, create(&args.out)?)?;

    let mut counts = [0usize; 9];
    for t in &tagged {
        for op in t.ops.iter() {
            counts[op.index()] += 1;
        }
    }
    Ok(TagSummary {
        n_instances: tagged.len(),
        counts,
        with_skips: tagged.iter().filter(|t| t.has_skips()).count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnnotateSummary {
    pub written: usize,
    pub degenerate: usize,
}

#[derive(Serialize)]
struct PairRecord<'a> {
    id: &'a str,
    source: &'a str,
    target: &'a str,
}

pub fn cmd_annotate(args: &AnnotateArgs) -> Result<AnnotateSummary> {
    let corpus = read_corpus(&args.corpus, false)?;
    let labels = load_gold_labels(open(&args.tagged)?)
        .with_context(|| format!("loading tagged file {}", args.tagged.display()))?;

    let corpus_ids: BTreeSet<&str> = corpus.iter().map(|si| si.id.as_str()).collect();
    let mut mismatched: Vec<&str> = labels
        .keys()
        .map(String::as_str)
        .filter(|id| !corpus_ids.contains(id))
        .collect();
    mismatched.extend(
        corpus
            .iter()
            .filter(|si| !si.alignment.is_degenerate() && !labels.contains_key(&si.id))
            .map(|si| si.id.as_str()),
    );
    if !mismatched.is_empty() {
        mismatched.sort();
        bail!("tagged file and corpus disagree on ids: {}", mismatched.join(", "));
    }

    let style = AnnotationStyle::from(args.style);
    let mut out = create(&args.out)?;
    let mut summary = AnnotateSummary {
        written: 0,
        degenerate: 0,
    };
    for si in &corpus {
        let Some(ops) = labels.get(&si.id) else {
            summary.degenerate += 1;
            continue;
        };
        if si.alignment.is_degenerate() {
            summary.degenerate += 1;
            continue;
        }
        let (source, target) = emit(si, *ops, style)?;
        match args.format {
            PairFormat::Tsv => {
                ensure!(
                    ![&source, &target].iter().any(|s| s.contains(['\t', '\n', '\r'])),
                    "instance `{}` contains a tab or line break; use --format jsonl",
                    si.id
                );
                writeln!(out, "{source}\t{target}")?;
            }
            PairFormat::Jsonl => {
                serde_json::to_writer(
                    &mut out,
                    &PairRecord {
                        id: &si.id,
                        source: &source,
                        target: &target,
                    },
                )?;
                out.write_all(b"\n")?;
            }
        }
        summary.written += 1;
    }
    out.flush()?;
    if summary.degenerate > 0 {
        info!("excluded {} complete deletions/additions", summary.degenerate);
    }
    Ok(summary)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScoreReport {
    pub n: usize,
    pub sari: f64,
    pub f1_add: f64,
    pub f1_keep: f64,
    pub p_delete: f64,
    pub bleu: f64,
    pub identical_pct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_sentence_sari: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub sari: f64,
    pub wilcoxon: Option<cogsimp::metrics::WilcoxonResult>,
}

fn same_len(what: &str, path: &Path, lines: &[String], n: usize) -> Result<()> {
    ensure!(
        lines.len() == n,
        "{what} {} has {} lines but the sources have {n}",
        path.display(),
        lines.len()
    );
    Ok(())
}

pub fn cmd_score(args: &ScoreArgs) -> Result<ScoreReport> {
    let tokenizer = args.tokenizer.build();
    let sources = read_lines(&args.sources)?;
    let n = sources.len();
    ensure!(n > 0, "no sources in {}", args.sources.display());
    let outputs = read_lines(&args.outputs)?;
    same_len("outputs", &args.outputs, &outputs, n)?;
    let mut references = vec![Vec::with_capacity(args.refs.len()); n];
    for path in &args.refs {
        let lines = read_lines(path)?;
        same_len("references", path, &lines, n)?;
        for (r, line) in references.iter_mut().zip(lines) {
            r.push(line);
        }
    }

    let score = sari(&sources, &outputs, &references, tokenizer.as_ref())?;
    let per: Vec<f64> = score.per_sentence.iter().flatten().map(|s| s.sari).collect();
    let comparison = match &args.compare_outputs {
        None => None,
        Some(path) => {
            let other = read_lines(path)?;
            same_len("outputs", path, &other, n)?;
            let other_score = sari(&sources, &other, &references, tokenizer.as_ref())?;
            let other_per: Vec<f64> = other_score.per_sentence.iter().flatten().map(|s| s.sari).collect();
            let wilcoxon = match wilcoxon_signed_rank(&per, &other_per) {
                Ok(w) => Some(w),
                Err(cogsimp::Error::NoNonzeroDifferences) => None,
                Err(e) => return Err(e.into()),
            };
            Some(Comparison {
                sari: other_score.sari,
                wilcoxon,
            })
        }
    };
    let report = ScoreReport {
        n,
        sari: score.sari,
        f1_add: score.f1_add,
        f1_keep: score.f1_keep,
        p_delete: score.p_delete,
        bleu: bleu(&outputs, &references, tokenizer.as_ref())?,
        identical_pct: identical_pct(&sources, &outputs)?,
        per_sentence_sari: args.per_sentence.then_some(per),
        comparison,
    };
    write_json(&report, args.out.as_deref())?;
    Ok(report)
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let mut out = create(p)?;
            serde_json::to_writer_pretty(&mut out, value)?;
            out.write_all(b"\n")?;
            out.flush()?;
        }
        None => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{:.1}", 100.0 * x))
}

pub fn agreement_table(r: &AgreementReport) -> String {
    let mut s = format!(
        "{:<10} {:>6} {:>6} {:>6} {:>5} {:>6}\n",
        "op", "P", "R", "F1", "#", "kappa"
    );
    for op in OperationToken::ALL {
        let x = &r.per_op[&op];
        let kappa = r.kappa_per_op[&op].map_or_else(|| "n/a".to_string(), |k| format!("{k:.2}"));
        s += &format!(
            "{:<10} {:>6} {:>6} {:>6} {:>5} {:>6}\n",
            op.name(),
            fmt_opt(x.precision),
            fmt_opt(x.recall),
            fmt_opt(x.f1),
            x.support,
            kappa
        );
    }
    s += &format!(
        "{:<10} {:>6} {:>6} {:>6} {:>5}\n",
        "micro",
        fmt_opt(r.micro.precision),
        fmt_opt(r.micro.recall),
        fmt_opt(r.micro.f1),
        r.micro.support
    );
    s
}

pub fn cmd_agree(args: &AgreeArgs) -> Result<AgreementReport> {
    let pred = load_gold_labels(open(&args.pred)?).with_context(|| format!("loading {}", args.pred.display()))?;
    let gold = load_gold_labels(open(&args.gold)?).with_context(|| format!("loading {}", args.gold.display()))?;
    let report = agreement(&pred, &gold)?;
    if let Some(p) = &args.out {
        write_json(&report, Some(p))?;
    }
    Ok(report)
}

#[derive(Serialize)]
struct ProfileRecord<'a> {
    name: &'a str,
    n_instances: usize,
    freqs: BTreeMap<OperationToken, f64>,
    /// Rows and columns in canonical operation order.
    corr: &'a [[f64; 9]; 9],
    degenerate_ops: &'a BTreeSet<OperationToken>,
    histogram: BTreeMap<usize, usize>,
}

pub fn cmd_compare(args: &CompareArgs) -> Result<()> {
    ensure!(args.inputs.len() >= 2, "compare needs at least two tagged files");
    ensure!(
        args.names.is_empty() || args.names.len() == args.inputs.len(),
        "{} names given for {} inputs",
        args.names.len(),
        args.inputs.len()
    );
    let mut profiles = Vec::new();
    let mut histograms = Vec::new();
    for (i, path) in args.inputs.iter().enumerate() {
        let name = match args.names.get(i) {
            Some(n) => n.clone(),
            None => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| format!("subset{i}")),
        };
        let labels = load_gold_labels(open(path)?).with_context(|| format!("loading {}", path.display()))?;
        let sets: Vec<OperationSet> = labels.into_values().collect();
        profiles.push(profile_from_sets(&sets, &name)?);
        histograms.push(ops_histogram(sets));
    }
    let jsd = pairwise_distances(&profiles, DistanceMetric::MeanJsd)?;
    let l2 = pairwise_distances(&profiles, DistanceMetric::L2)?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    jsd.write_csv(create(&args.out.join("distances_jsd.csv"))?)?;
    l2.write_csv(create(&args.out.join("distances_l2.csv"))?)?;

    let records: Vec<ProfileRecord> = profiles
        .iter()
        .zip(&histograms)
        .map(|(p, h)| ProfileRecord {
            name: &p.subset_name,
            n_instances: p.n_instances,
            freqs: OperationToken::ALL.iter().map(|op| (*op, p.freq(*op))).collect(),
            corr: &p.corr,
            degenerate_ops: &p.degenerate_ops,
            histogram: h.clone(),
        })
        .collect();
    write_json(&records, Some(&args.out.join("profiles.json")))?;

    let mut w = csv::Writer::from_writer(create(&args.out.join("histograms.csv"))?);
    let mut header = vec!["subset".to_string()];
    header.extend((0..=9).map(|k| k.to_string()));
    w.write_record(&header)?;
    for (p, h) in profiles.iter().zip(&histograms) {
        let mut row = vec![p.subset_name.clone()];
        row.extend((0..=9).map(|k| h.get(&k).copied().unwrap_or(0).to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    println!("compared {} subsets into {}", profiles.len(), args.out.display());
    Ok(())
}

pub fn cmd_stats(args: &StatsArgs) -> Result<cogsimp::metrics::CorpusStats> {
    let mut instances = read_corpus(&args.corpus, !args.keep_degenerate)?;
    attach(&mut instances, &args.parses)?;
    let freq = match &args.freq {
        Some(p) => Some(load_frequency_table(open(p)?).with_context(|| format!("loading {}", p.display()))?),
        None => None,
    };
    let stats = corpus_stats(&instances, freq.as_ref(), args.tokenizer.build().as_ref());
    write_json(&stats, args.out.as_deref())?;
    Ok(stats)
}
