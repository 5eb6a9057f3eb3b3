use std::fmt::Write as _;

use serde_json::{json, Value};

use scheme_minor_core::atlas::{verify_atlas_claims, AtlasOptions};
use scheme_minor_core::classify::{classify, ClassifyOptions, Effort};
use scheme_minor_core::graph::format::to_graph6;
use scheme_minor_core::minor::{find_minor_with, find_rooted_minor_with, SearchLimits};
use scheme_minor_core::mprime::{
    build_induced_model, build_mprime, decide_with, find_inducing_stable_set, witness_for_stable_set,
};
use scheme_minor_core::scheme::{
    normalize_scheme, parse_scheme, validate_colored_scheme, validate_hscheme, ColoredScheme, SchemeJson,
};
use scheme_minor_core::{MinorModel, ValidationReport};

use crate::input::{read_graph, read_text};
use crate::{AtlasCmd, Cli, CliError, Command, EffortArg, MinorCmd, MprimeCmd, Output, SchemeCmd};

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

fn ok(json: Value, text: String) -> Output {
    Output {
        json,
        text,
        negative: false,
    }
}

fn report_text(r: &ValidationReport) -> String {
    let mut s = String::from(if r.valid { "valid\n" } else { "invalid\n" });
    for v in &r.violations {
        let _ = writeln!(s, "  {}: {}", v.clause, v.detail);
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn sets_text(m: &MinorModel) -> String {
    let mut s = String::new();
    for (v, set) in m.branch_sets.iter().enumerate() {
        let _ = writeln!(s, "  {v}: {set:?}");
    }
    s
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let limits = SearchLimits {
        max_host_vertices: cli.max_host_vertices,
    };
    match &cli.command {
        Command::Scheme(SchemeCmd::Validate { scheme }) => {
            let (s, colors) = parse_scheme(&read_text(scheme)?)?;
            let r = match colors {
                Some(colors) => validate_colored_scheme(&ColoredScheme { scheme: s, colors }),
                None => validate_hscheme(&s),
            };
            Ok(Output {
                json: to_value(&r),
                text: report_text(&r),
                negative: !r.valid,
            })
        }
        Command::Scheme(SchemeCmd::Normalize { scheme }) => {
            let (s, _) = parse_scheme(&read_text(scheme)?)?;
            let out = normalize_scheme(&s)?;
            let text = format!(
                "normalized to {} host vertices after {} steps\norigin: {:?}\n",
                out.colored.scheme.host.n(),
                out.trace.len(),
                out.origin
            );
            let json = json!({
                "scheme": SchemeJson::from_colored(&out.colored),
                "trace": out.trace,
                "origin": out.origin,
            });
            Ok(ok(json, text))
        }
        Command::Minor(MinorCmd::Find {
            host,
            pattern,
            rooted,
            roots,
        }) => {
            let g = read_graph(host)?;
            let h = read_graph(pattern)?;
            let (model, stats) = match (rooted, roots) {
                (true, Some(r)) => find_rooted_minor_with(&g, &h, r, limits)?,
                (false, None) => find_minor_with(&g, &h, limits)?,
                (false, Some(_)) => return Err(CliError::Usage("--roots needs --rooted".into())),
                (true, None) => unreachable!("clap enforces --roots"),
            };
            Ok(match model {
                Some(m) => Output {
                    text: format!("found\n{}", sets_text(&m)),
                    json: json!({"result": "found", "model": m, "stats": stats}),
                    negative: false,
                },
                None => Output {
                    text: format!("none ({} search nodes)\n", stats.nodes),
                    json: json!({"result": "none", "stats": stats}),
                    negative: true,
                },
            })
        }
        Command::Mprime(MprimeCmd::Build { graph }) => {
            let h = read_graph(&graph.graph)?;
            let m = build_mprime(&h)?;
            let text = format!(
                "M'(H): {} vertices, {} edges, roots {:?}\n",
                m.graph.n(),
                m.graph.edge_count(),
                m.roots
            );
            let json = json!({
                "graph": m.graph,
                "graph6": to_graph6(&m.graph)?,
                "roots": m.roots,
                "scheme": SchemeJson::from_colored(&m.scheme),
            });
            Ok(ok(json, text))
        }
        Command::Mprime(MprimeCmd::Decide { graph }) => {
            let h = read_graph(&graph.graph)?;
            let d = decide_with(&h, limits)?;
            Ok(Output {
                text: format!("{} ({})\n", d.contractible, d.certificate.kind()),
                json: to_value(&d),
                negative: !d.contractible,
            })
        }
        Command::Mprime(MprimeCmd::Witness { graph, stable }) => {
            let h = read_graph(&graph.graph)?;
            let w = match stable {
                Some(s) => witness_for_stable_set(&h, s)?,
                None => find_inducing_stable_set(&h)?,
            };
            Ok(match w {
                Some(w) => {
                    let model = build_induced_model(&h, &w)?;
                    Output {
                        text: format!("stable set {:?}\n{}", w.stable, sets_text(&model)),
                        json: json!({"result": "found", "witness": w, "model": model}),
                        negative: false,
                    }
                }
                None => Output {
                    text: "none\n".into(),
                    json: json!({"result": "none"}),
                    negative: true,
                },
            })
        }
        Command::Classify { graph, effort } => {
            let g = read_graph(&graph.graph)?;
            let opts = ClassifyOptions {
                effort: match effort {
                    EffortArg::Fast => Effort::Fast,
                    EffortArg::Deep => Effort::Deep,
                },
                cycle_cap: cli.cycle_cap,
                ..ClassifyOptions::default()
            };
            let v = classify(&g, opts)?;
            let json = to_value(&v);
            let mut text = json["status"].as_str().unwrap_or_default().to_string();
            if let Some(r) = v.rule {
                let _ = write!(text, " by {r}");
            }
            text.push('\n');
            for a in &v.annotations {
                let _ = writeln!(text, "  note: {a}");
            }
            for i in &v.indeterminate {
                let _ = writeln!(text, "  indeterminate: {i}");
            }
            Ok(ok(json, text))
        }
        Command::Atlas(AtlasCmd::Verify {
            max_n,
            min_n,
            bipartite,
            threads,
            out,
        }) => {
            let mut opts = AtlasOptions {
                min_n: *min_n,
                only_bipartite: *bipartite,
                threads: *threads,
                ..AtlasOptions::up_to(*max_n)
            };
            opts.classify.cycle_cap = cli.cycle_cap;
            let report = verify_atlas_claims(&opts)?;
            if let Some(path) = out {
                std::fs::write(path, report.to_jsonl()).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            for f in &report.failures {
                eprintln!("failure {}: {}", f.graph6, f.reason);
            }
            if !report.passed() {
                return Err(CliError::Claims(format!("{} graphs failed", report.failures.len())));
            }
            let s = &report.summary;
            let text = format!(
                "{} graphs on {}..={} vertices, {} M'-contractible, no failures\n",
                s.graphs, s.min_n, s.max_n, s.mprime_contractible
            );
            Ok(ok(to_value(s), text))
        }
    }
}
