//! Exhaustive axiom checking with lexicographically minimal witnesses.

use std::fmt;

use serde::Serialize;

use crate::ring::FiniteCommutativeRing;
use crate::triring::FiniteTriring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum AxiomLayer {
    Group,
    Ring,
    Bimodule,
    Triassociativity,
    ActionSymmetry,
    Homomorphism,
    MultiplicativeSubset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub id: String,
    pub layer: AxiomLayer,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn first_failing_layer(&self) -> Option<AxiomLayer> {
        self.failures().map(|c| c.layer).next()
    }

    pub fn check(&self, id: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub(crate) fn record(&mut self, layer: AxiomLayer, id: impl Into<String>, witness: Option<Vec<usize>>) {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.checks.push(AxiomCheck { id: id.into(), layer, status, witness });
    }

    fn skip(&mut self, layer: AxiomLayer, ids: &[&str]) {
        for id in ids {
            self.checks.push(AxiomCheck { id: id.to_string(), layer, status: Status::Skipped, witness: None });
        }
    }

    fn layer_failed(&self, layer: AxiomLayer) -> bool {
        self.failures().any(|c| c.layer == layer)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            write!(f, "{status:4} {:?} {}", c.layer, c.id)?;
            if let Some(w) = &c.witness {
                write!(f, " witness {w:?}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// First tuple in lexicographic order over `0..a` on which `ok` fails.
pub(crate) fn first_fail1(a: usize, ok: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    (0..a).find(|&x| !ok(x)).map(|x| vec![x])
}

pub(crate) fn first_fail2(a: usize, b: usize, ok: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..a {
        for y in 0..b {
            if !ok(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

pub(crate) fn first_fail3(
    a: usize,
    b: usize,
    c: usize,
    ok: impl Fn(usize, usize, usize) -> bool,
) -> Option<Vec<usize>> {
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                if !ok(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

fn group_layer(report: &mut ValidationReport, prefix: &str, r: &FiniteCommutativeRing) {
    let n = r.size();
    let layer = AxiomLayer::Group;
    report.record(layer, format!("{prefix}.add.associative"), first_fail3(n, n, n, |a, b, c| {
        r.add(r.add(a, b), c) == r.add(a, r.add(b, c))
    }));
    report.record(layer, format!("{prefix}.add.commutative"), first_fail2(n, n, |a, b| r.add(a, b) == r.add(b, a)));
    report.record(layer, format!("{prefix}.add.identity"), first_fail1(n, |a| r.add(a, 0) == a && r.add(0, a) == a));
    report.record(layer, format!("{prefix}.add.inverse"), first_fail1(n, |a| {
        (0..n).any(|b| r.add(a, b) == 0 && r.add(b, a) == 0)
    }));
}

fn ring_layer(report: &mut ValidationReport, prefix: &str, op: &str, r: &FiniteCommutativeRing) {
    let n = r.size();
    let layer = AxiomLayer::Ring;
    report.record(layer, format!("{prefix}.{op}.associative"), first_fail3(n, n, n, |a, b, c| {
        r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c))
    }));
    report.record(layer, format!("{prefix}.{op}.commutative"), first_fail2(n, n, |a, b| r.mul(a, b) == r.mul(b, a)));
    report.record(layer, format!("{prefix}.{op}.distributive"), first_fail3(n, n, n, |a, b, c| {
        r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
            && r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c))
    }));
    let one = r.one();
    report.record(layer, format!("{prefix}.{op}.identity"), first_fail1(n, |a| r.mul(one, a) == a && r.mul(a, one) == a));
}

/// Checks every triring axiom, layer by layer. Once a layer fails, later
/// layers are reported as skipped since they presuppose it.
pub fn validate_triring(r: &FiniteTriring) -> ValidationReport {
    let mut report = ValidationReport::new(r.name());
    let (e, o) = (r.even(), r.odd());
    let (n0, n1) = (e.size(), o.size());

    group_layer(&mut report, "even", e);
    group_layer(&mut report, "odd", o);
    if report.layer_failed(AxiomLayer::Group) {
        skip_from(&mut report, AxiomLayer::Ring);
        return report;
    }

    ring_layer(&mut report, "even", "mul", e);
    ring_layer(&mut report, "odd", "sharp", o);
    if report.layer_failed(AxiomLayer::Ring) {
        skip_from(&mut report, AxiomLayer::Bimodule);
        return report;
    }

    let layer = AxiomLayer::Bimodule;
    let (l, rt) = (|x, a| r.left(x, a), |a, x| r.right(a, x));
    report.record(layer, "left.additive_in_module", first_fail3(n0, n1, n1, |x, a, b| {
        l(x, o.add(a, b)) == o.add(l(x, a), l(x, b))
    }));
    report.record(layer, "left.additive_in_ring", first_fail3(n0, n0, n1, |x, y, a| {
        l(e.add(x, y), a) == o.add(l(x, a), l(y, a))
    }));
    report.record(layer, "left.associative", first_fail3(n0, n0, n1, |x, y, a| l(e.mul(x, y), a) == l(x, l(y, a))));
    report.record(layer, "left.unital", first_fail1(n1, |a| l(e.one(), a) == a));
    report.record(layer, "right.additive_in_module", first_fail3(n1, n1, n0, |a, b, x| {
        rt(o.add(a, b), x) == o.add(rt(a, x), rt(b, x))
    }));
    report.record(layer, "right.additive_in_ring", first_fail3(n1, n0, n0, |a, x, y| {
        rt(a, e.add(x, y)) == o.add(rt(a, x), rt(a, y))
    }));
    report.record(layer, "right.associative", first_fail3(n1, n0, n0, |a, x, y| rt(a, e.mul(x, y)) == rt(rt(a, x), y)));
    report.record(layer, "right.unital", first_fail1(n1, |a| rt(a, e.one()) == a));
    report.record(layer, "middle.associative", first_fail3(n0, n1, n0, |x, a, y| rt(l(x, a), y) == l(x, rt(a, y))));
    if report.layer_failed(layer) {
        skip_from(&mut report, AxiomLayer::Triassociativity);
        return report;
    }

    let layer = AxiomLayer::Triassociativity;
    report.record(layer, "triassoc.left", first_fail3(n0, n1, n1, |x, a, b| {
        l(x, o.mul(a, b)) == o.mul(l(x, a), b)
    }));
    report.record(layer, "triassoc.right", first_fail3(n1, n1, n0, |a, b, x| {
        rt(o.mul(a, b), x) == o.mul(a, rt(b, x))
    }));
    if report.layer_failed(layer) {
        skip_from(&mut report, AxiomLayer::ActionSymmetry);
        return report;
    }

    // R1·x0 = x0·R1 as sets; the witness is (x0, α) with α in one side only.
    let witness = (0..n0).find_map(|x| {
        let mut lhs = vec![false; n1];
        let mut rhs = vec![false; n1];
        for a in 0..n1 {
            lhs[rt(a, x)] = true;
            rhs[l(x, a)] = true;
        }
        (0..n1).find(|&a| lhs[a] != rhs[a]).map(|a| vec![x, a])
    });
    report.record(AxiomLayer::ActionSymmetry, "action.symmetry", witness);
    report
}

pub(crate) fn skip_from(report: &mut ValidationReport, from: AxiomLayer) {
    let ring_ids: Vec<String> = ["even.mul", "odd.sharp"]
        .iter()
        .flat_map(|p| ["associative", "commutative", "distributive", "identity"].map(|s| format!("{p}.{s}")))
        .collect();
    let layers: [(AxiomLayer, Vec<String>); 4] = [
        (AxiomLayer::Ring, ring_ids),
        (
            AxiomLayer::Bimodule,
            [
                "left.additive_in_module",
                "left.additive_in_ring",
                "left.associative",
                "left.unital",
                "right.additive_in_module",
                "right.additive_in_ring",
                "right.associative",
                "right.unital",
                "middle.associative",
            ]
            .map(String::from)
            .to_vec(),
        ),
        (AxiomLayer::Triassociativity, vec!["triassoc.left".into(), "triassoc.right".into()]),
        (AxiomLayer::ActionSymmetry, vec!["action.symmetry".into()]),
    ];
    for (layer, ids) in layers.iter() {
        if *layer >= from {
            let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
            report.skip(*layer, &ids);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triring::FiniteTriring;

    #[test]
    fn builtins_validate() {
        for r in [FiniteTriring::te(4, 4), FiniteTriring::te(6, 3), FiniteTriring::tq_modp(3)] {
            let r = r.unwrap();
            let report = validate_triring(&r);
            assert!(report.passed(), "{}\n{report}", r.name());
        }
    }

    #[test]
    fn later_layers_skip_after_failure() {
        let mut t = FiniteTriring::te(4, 4).unwrap().tables();
        t.even_add[1][2] = 0;
        let report = validate_triring(&FiniteTriring::from_tables(t).unwrap());
        assert_eq!(report.first_failing_layer(), Some(AxiomLayer::Group));
        assert_eq!(report.check("action.symmetry").unwrap().status, Status::Skipped);
        assert_eq!(report.check("even.add.commutative").unwrap().witness, Some(vec![1, 2]));
    }
}
