use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Passed, but the bound is no better than the trivial one.
    VacuousPass,
    /// Recorded, not checked.
    Info,
    /// A statistical cell that failed once and was rerun on a derived seed.
    Retried,
}

/// One CSV row. `measured <= bound` decides pass or fail for checked rows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub experiment: String,
    pub n: usize,
    pub trial: usize,
    pub measured: f64,
    pub bound: f64,
    pub status: Status,
    pub seed: u64,
    pub item: String,
}

impl Row {
    /// Checked row; vacuous when the bound is at least `trivial`.
    pub fn check(experiment: &str, n: usize, trial: usize, measured: f64, bound: f64, trivial: Option<f64>, seed: u64, item: impl Into<String>) -> Self {
        let status = if measured <= bound {
            match trivial {
                Some(t) if bound >= t => Status::VacuousPass,
                _ => Status::Pass,
            }
        } else {
            Status::Fail
        };
        Self {
            experiment: experiment.into(),
            n,
            trial,
            measured,
            bound,
            status,
            seed,
            item: item.into(),
        }
    }

    pub fn info(experiment: &str, n: usize, trial: usize, measured: f64, bound: f64, seed: u64, item: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            n,
            trial,
            measured,
            bound,
            status: Status::Info,
            seed,
            item: item.into(),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::VacuousPass)
    }

    pub fn is_checked(&self) -> bool {
        matches!(self.status, Status::Pass | Status::VacuousPass | Status::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub checked: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub failed: usize,
    pub pass_rate: f64,
    pub median_measured: f64,
    pub max_measured: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub rows: Vec<Row>,
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        (values[k / 2 - 1] + values[k / 2]) / 2.0
    }
}

impl Report {
    pub fn new(experiment: &str, config: &crate::ExperimentConfig, rows: Vec<Row>) -> Self {
        Self {
            experiment: experiment.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_hash: config.hash(),
            seed: config.seed,
            rows,
        }
    }

    pub fn aggregate(&self) -> Aggregate {
        let checked: Vec<&Row> = self.rows.iter().filter(|r| r.is_checked()).collect();
        let passed = checked.iter().filter(|r| r.status == Status::Pass).count();
        let vacuous = checked.iter().filter(|r| r.status == Status::VacuousPass).count();
        let failed = checked.len() - passed - vacuous;
        let mut measured: Vec<f64> = checked.iter().map(|r| r.measured).collect();
        Aggregate {
            checked: checked.len(),
            passed,
            vacuous,
            failed,
            pass_rate: if checked.is_empty() {
                1.0
            } else {
                (passed + vacuous) as f64 / checked.len() as f64
            },
            max_measured: measured.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            median_measured: median(&mut measured),
        }
    }

    /// No checked row failed.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    /// Every checked row's status agrees with `measured <= bound`.
    pub fn statuses_consistent(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.is_checked())
            .all(|r| (r.measured <= r.bound) == r.passed())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("rows serialise");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Full<'a> {
            #[serde(flatten)]
            report: &'a Report,
            aggregate: Aggregate,
        }
        serde_json::to_string_pretty(&Full {
            report: self,
            aggregate: self.aggregate(),
        })
        .expect("report serialises")
    }
}
