use serde::Serialize;
use zeno_core::{
    error_sweep, BounceConfig, DichotomyConfig, FloatReport, GeometricEventProcess, RaceConfig,
    Rational, StepEvent,
};

use crate::output::{csv, envelope, table, Num};
use crate::{AuditFormat, CliError, RaceArgs, TableFormat};

#[derive(Serialize)]
struct RaceInputs {
    x0: String,
    sa: String,
    st: String,
}

impl RaceInputs {
    fn new(config: &RaceConfig) -> Self {
        RaceInputs {
            x0: config.head_start().to_string(),
            sa: config.achilles_speed().to_string(),
            st: config.tortoise_speed().to_string(),
        }
    }
}

fn race_config(args: &RaceArgs) -> Result<RaceConfig, CliError> {
    Ok(RaceConfig::new(
        args.x0.clone(),
        args.sa.clone(),
        args.st.clone(),
    )?)
}

fn internal(what: &str, n: u32) -> CliError {
    CliError::Internal(format!("cross-check failed: {what} at step {n}"))
}

fn kv(label: &str, value: &Rational, digits: usize) -> Vec<String> {
    vec![
        label.to_string(),
        value.to_string(),
        value.to_decimal_string(digits),
    ]
}

pub fn catchup(args: &RaceArgs, json: bool, digits: usize) -> Result<String, CliError> {
    let config = race_config(args)?;
    let limit = config.catch_up()?;

    #[derive(Serialize)]
    struct Results {
        t_inf: Num,
        x_inf: Num,
    }

    Ok(if json {
        envelope(
            "catchup",
            RaceInputs::new(&config),
            Results {
                t_inf: Num::new(&limit.time, digits),
                x_inf: Num::new(&limit.position, digits),
            },
        )
    } else {
        table(&[
            kv("t_inf", &limit.time, digits),
            kv("x_inf", &limit.position, digits),
        ])
    })
}

struct StepRow {
    event: StepEvent,
    gap: Rational,
}

/// Recurrence rows, checked against the closed forms where they exist.
fn step_rows(config: &RaceConfig, count: u32) -> Result<Vec<StepRow>, CliError> {
    let events = config.step_sequence(count as usize)?;
    if !config.speed_identities_hold(&events) {
        return Err(CliError::Internal(
            "cross-check failed: speed identities".to_string(),
        ));
    }
    let has_closed_form = !config.ratio().is_one();
    let mut rows = Vec::with_capacity(events.len());
    for event in events {
        let n = event.n;
        if has_closed_form
            && (config.t_n_closed(n)? != event.time || config.x_n_closed(n)? != event.position)
        {
            return Err(internal("closed form", n));
        }
        let gap = config.position_at(&event.time)?.lead();
        if config.is_convergent() && config.gap_at_step(n)? != gap {
            return Err(internal("gap", n));
        }
        rows.push(StepRow { event, gap });
    }
    Ok(rows)
}

pub fn steps(
    args: &RaceArgs,
    n: u32,
    format: TableFormat,
    digits: usize,
) -> Result<String, CliError> {
    let config = race_config(args)?;
    let rows = step_rows(&config, n)?;
    let cells = |r: &StepRow| {
        vec![
            r.event.n.to_string(),
            r.event.time.to_string(),
            r.event.position.to_string(),
            r.gap.to_string(),
        ]
    };
    const HEADER: [&str; 4] = ["n", "t_n", "x_n", "gap"];
    Ok(match format {
        TableFormat::Csv => csv(&HEADER, &rows.iter().map(cells).collect::<Vec<_>>()),
        TableFormat::Table => {
            let mut all = vec![HEADER.iter().map(|h| h.to_string()).collect()];
            all.extend(rows.iter().map(cells));
            table(&all)
        }
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Inputs {
                #[serde(flatten)]
                race: RaceInputs,
                n: u32,
            }
            #[derive(Serialize)]
            struct Row {
                n: u32,
                t_n: Num,
                x_n: Num,
                gap: Num,
            }
            #[derive(Serialize)]
            struct Results {
                convergent: bool,
                rows: Vec<Row>,
            }
            let results = Results {
                convergent: config.is_convergent(),
                rows: rows
                    .iter()
                    .map(|r| Row {
                        n: r.event.n,
                        t_n: Num::new(&r.event.time, digits),
                        x_n: Num::new(&r.event.position, digits),
                        gap: Num::new(&r.gap, digits),
                    })
                    .collect(),
            };
            let inputs = Inputs {
                race: RaceInputs::new(&config),
                n,
            };
            envelope("steps", inputs, results)
        }
    })
}

pub fn within(
    args: &RaceArgs,
    eps: &Rational,
    json: bool,
    digits: usize,
) -> Result<String, CliError> {
    let config = race_config(args)?;
    // divergence is reported before any other complaint about eps
    config.catch_up()?;
    let n = config.steps_to_within(eps)?;
    let residual = config.residual(n)?;
    if residual >= *eps || (n > 0 && config.residual(n - 1)? < *eps) {
        return Err(internal("minimality", n));
    }

    Ok(if json {
        #[derive(Serialize)]
        struct Inputs {
            #[serde(flatten)]
            race: RaceInputs,
            eps: String,
        }
        #[derive(Serialize)]
        struct Results {
            n: u32,
            residual: Num,
        }
        envelope(
            "within",
            Inputs {
                race: RaceInputs::new(&config),
                eps: eps.to_string(),
            },
            Results {
                n,
                residual: Num::new(&residual, digits),
            },
        )
    } else {
        table(&[
            vec!["n".to_string(), n.to_string()],
            kv("residual", &residual, digits),
        ])
    })
}

pub fn process(
    first: &Rational,
    ratio: &Rational,
    k: Option<u32>,
    json: bool,
    digits: usize,
) -> Result<String, CliError> {
    let process = GeometricEventProcess::new(first.clone(), ratio.clone())?;
    let accumulation = process.accumulation_point();
    let Some(k) = k else {
        // the limit is the only requested output, so divergence is an error
        let point = accumulation?;
        return Ok(if json {
            #[derive(Serialize)]
            struct Results {
                accumulation: Num,
            }
            envelope(
                "process",
                ProcessInputs::new(&process, None),
                Results {
                    accumulation: Num::new(&point, digits),
                },
            )
        } else {
            table(&[kv("accumulation", &point, digits)])
        });
    };

    let times = process.event_times(k as usize + 1)?;
    if !process.ratio().is_one() {
        for (i, t) in times.iter().enumerate() {
            if process.event_time(i as u32)? != *t {
                return Err(internal("closed-form event time", i as u32));
            }
        }
    }
    let accumulation = match accumulation {
        Ok(p) => Some(p),
        Err(e) if e.is_divergent() => None,
        Err(e) => return Err(e.into()),
    };

    Ok(if json {
        #[derive(Serialize)]
        struct Event {
            k: u32,
            time: Num,
        }
        #[derive(Serialize)]
        struct Results {
            convergent: bool,
            accumulation: Option<Num>,
            events: Vec<Event>,
        }
        envelope(
            "process",
            ProcessInputs::new(&process, Some(k)),
            Results {
                convergent: accumulation.is_some(),
                accumulation: accumulation.as_ref().map(|p| Num::new(p, digits)),
                events: times
                    .iter()
                    .enumerate()
                    .map(|(i, t)| Event {
                        k: i as u32,
                        time: Num::new(t, digits),
                    })
                    .collect(),
            },
        )
    } else {
        let mut rows = vec![vec![
            "k".to_string(),
            "time".to_string(),
            "decimal".to_string(),
        ]];
        rows.extend(times.iter().enumerate().map(|(i, t)| {
            vec![i.to_string(), t.to_string(), t.to_decimal_string(digits)]
        }));
        let mut out = table(&rows);
        out.push('\n');
        out.push_str(&match &accumulation {
            Some(p) => table(&[kv("accumulation", p, digits)]),
            None => "accumulation  divergent (ratio ≥ 1)\n".to_string(),
        });
        out
    })
}

#[derive(Serialize)]
struct ProcessInputs {
    first: String,
    ratio: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
}

impl ProcessInputs {
    fn new(process: &GeometricEventProcess, k: Option<u32>) -> Self {
        ProcessInputs {
            first: process.first_interval().to_string(),
            ratio: process.ratio().to_string(),
            k,
        }
    }
}

pub fn dichotomy(
    length: &Rational,
    speed: &Rational,
    n: u32,
    format: TableFormat,
    digits: usize,
) -> Result<String, CliError> {
    let config = DichotomyConfig::new(length.clone(), speed.clone())?;
    let events = config.sequence(n as usize)?;
    let process = config.process();
    for e in &events {
        if e.position >= *config.length() || process.event_time(e.n)? != e.time {
            return Err(internal("halving sequence", e.n));
        }
    }
    let total = config.total_time();
    if total != config.length() / config.speed() {
        return Err(CliError::Internal(
            "cross-check failed: total time".to_string(),
        ));
    }

    let cells = |e: &StepEvent| vec![e.n.to_string(), e.time.to_string(), e.position.to_string()];
    const HEADER: [&str; 3] = ["n", "t_n", "x_n"];
    Ok(match format {
        TableFormat::Csv => csv(&HEADER, &events.iter().map(cells).collect::<Vec<_>>()),
        TableFormat::Table => {
            let mut rows = vec![HEADER.iter().map(|h| h.to_string()).collect()];
            rows.extend(events.iter().map(cells));
            let mut out = table(&rows);
            out.push('\n');
            out.push_str(&table(&[kv("total_time", &total, digits)]));
            out
        }
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Inputs {
                length: String,
                speed: String,
                n: u32,
            }
            #[derive(Serialize)]
            struct Row {
                n: u32,
                t_n: Num,
                x_n: Num,
            }
            #[derive(Serialize)]
            struct Results {
                total_time: Num,
                rows: Vec<Row>,
            }
            envelope(
                "dichotomy",
                Inputs {
                    length: config.length().to_string(),
                    speed: config.speed().to_string(),
                    n,
                },
                Results {
                    total_time: Num::new(&total, digits),
                    rows: events
                        .iter()
                        .map(|e| Row {
                            n: e.n,
                            t_n: Num::new(&e.time, digits),
                            x_n: Num::new(&e.position, digits),
                        })
                        .collect(),
                },
            )
        }
    })
}

pub fn bounce(
    first: &Rational,
    ratio: &Rational,
    json: bool,
    digits: usize,
) -> Result<String, CliError> {
    let config = BounceConfig::new(first.clone(), ratio.clone())?;
    let rest = config.rest_time();

    Ok(if json {
        #[derive(Serialize)]
        struct Inputs {
            first: String,
            ratio: String,
        }
        #[derive(Serialize)]
        struct Results {
            rest_time: Num,
        }
        envelope(
            "bounce",
            Inputs {
                first: first.to_string(),
                ratio: ratio.to_string(),
            },
            Results {
                rest_time: Num::new(&rest, digits),
            },
        )
    } else {
        table(&[kv("rest_time", &rest, digits)])
    })
}

pub fn floaterr(args: &RaceArgs, nmax: u32, format: AuditFormat) -> Result<String, CliError> {
    let config = race_config(args)?;
    let sweep = error_sweep(&config, nmax)?;
    for (naive, comp) in &sweep {
        let exact = config.t_n_closed(naive.n)?;
        if naive.exact != exact || comp.exact != exact {
            return Err(internal("exact partial sum", naive.n));
        }
    }
    let reports = sweep.iter().flat_map(|(a, b)| [a, b]);

    Ok(match format {
        AuditFormat::Csv => {
            let cells = |r: &FloatReport| {
                vec![
                    r.n.to_string(),
                    r.method.to_string(),
                    r.value.to_string(),
                    r.exact.to_string(),
                    r.abs_error.to_string(),
                    r.rel_error.to_string(),
                ]
            };
            csv(
                &["n", "method", "value", "exact", "abs_error", "rel_error"],
                &reports.map(cells).collect::<Vec<_>>(),
            )
        }
        AuditFormat::Json => {
            #[derive(Serialize)]
            struct Inputs {
                #[serde(flatten)]
                race: RaceInputs,
                nmax: u32,
            }
            #[derive(Serialize)]
            struct Row {
                n: u32,
                method: &'static str,
                value: String,
                exact: String,
                abs_error: String,
                rel_error: String,
            }
            let rows: Vec<Row> = reports
                .map(|r| Row {
                    n: r.n,
                    method: r.method.as_str(),
                    value: r.value.to_string(),
                    exact: r.exact.to_string(),
                    abs_error: r.abs_error.to_string(),
                    rel_error: r.rel_error.to_string(),
                })
                .collect();
            envelope(
                "floaterr",
                Inputs {
                    race: RaceInputs::new(&config),
                    nmax,
                },
                serde_json::json!({ "rows": rows }),
            )
        }
    })
}
