use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::types::{OperationSet, OperationToken};

/// Serializes `None` as the string `"n/a"`.
fn or_na<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_str("n/a"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

impl Confusion {
    fn add(&mut self, pred: bool, gold: bool) {
        match (pred, gold) {
            (true, true) => self.tp += 1,
            (true, false) => self.fp += 1,
            (false, true) => self.fn_ += 1,
            (false, false) => self.tn += 1,
        }
    }

    pub fn precision(&self) -> Option<f64> {
        let d = self.tp + self.fp;
        (d > 0).then(|| self.tp as f64 / d as f64)
    }

    pub fn recall(&self) -> Option<f64> {
        let d = self.tp + self.fn_;
        (d > 0).then(|| self.tp as f64 / d as f64)
    }

    pub fn f1(&self) -> Option<f64> {
        let (p, r) = (self.precision()?, self.recall()?);
        Some(if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 })
    }

    /// Cohen's kappa; undefined when chance agreement is 1.
    pub fn kappa(&self) -> Option<f64> {
        let n = (self.tp + self.fp + self.fn_ + self.tn) as f64;
        if n == 0.0 {
            return None;
        }
        let po = (self.tp + self.tn) as f64 / n;
        let pred_yes = (self.tp + self.fp) as f64 / n;
        let gold_yes = (self.tp + self.fn_) as f64 / n;
        let pe = pred_yes * gold_yes + (1.0 - pred_yes) * (1.0 - gold_yes);
        if (1.0 - pe).abs() < 1e-12 {
            return None;
        }
        Some((po - pe) / (1.0 - pe))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpScores {
    #[serde(serialize_with = "or_na")]
    pub precision: Option<f64>,
    #[serde(serialize_with = "or_na")]
    pub recall: Option<f64>,
    #[serde(serialize_with = "or_na")]
    pub f1: Option<f64>,
    /// Gold positives.
    pub support: usize,
}

impl From<&Confusion> for OpScores {
    fn from(c: &Confusion) -> Self {
        OpScores {
            precision: c.precision(),
            recall: c.recall(),
            f1: c.f1(),
            support: c.tp + c.fn_,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub n_shared: usize,
    pub per_op: BTreeMap<OperationToken, OpScores>,
    pub micro: OpScores,
    #[serde(serialize_with = "kappa_map")]
    pub kappa_per_op: BTreeMap<OperationToken, Option<f64>>,
    pub confusion: BTreeMap<OperationToken, Confusion>,
}

fn kappa_map<S: Serializer>(m: &BTreeMap<OperationToken, Option<f64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        match v {
            Some(x) => map.serialize_entry(k, x)?,
            None => map.serialize_entry(k, "n/a")?,
        }
    }
    map.end()
}

/// Scores predicted operation sets against gold sets on the ids both share.
/// Every (id, op) pair is one binary decision.
pub fn agreement(
    pred: &BTreeMap<String, OperationSet>,
    gold: &BTreeMap<String, OperationSet>,
) -> Result<AgreementReport> {
    let shared: Vec<(&OperationSet, &OperationSet)> =
        pred.iter().filter_map(|(id, p)| gold.get(id).map(|g| (p, g))).collect();
    if shared.is_empty() {
        return Err(Error::InvalidInput("prediction and gold labels share no ids".into()));
    }
    let mut confusion: BTreeMap<OperationToken, Confusion> = BTreeMap::new();
    let mut micro = Confusion::default();
    for op in OperationToken::ALL {
        let c = confusion.entry(op).or_default();
        for (p, g) in &shared {
            c.add(p.contains(op), g.contains(op));
            micro.add(p.contains(op), g.contains(op));
        }
    }
    Ok(AgreementReport {
        n_shared: shared.len(),
        per_op: confusion.iter().map(|(op, c)| (*op, c.into())).collect(),
        micro: (&micro).into(),
        kappa_per_op: confusion.iter().map(|(op, c)| (*op, c.kappa())).collect(),
        confusion,
    })
}
