//! Tangent weights at coordinate points of semi-invariant diagonal hypersurfaces.

use serde::{Deserialize, Serialize};

use super::{check_format, ActionDescription, FixedComponent};
use crate::error::{Error, Result};
use crate::group::FinAbGroup;

/// `X = {f = 0} ⊂ P^N` with `C_N` acting diagonally, `f` a sum of monomials all of
/// the same weight `χ_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalHypersurface {
    pub name: String,
    group: FinAbGroup,
    order: i64,
    weights: Vec<i64>,
    degree: u32,
    monomials: Vec<Vec<u32>>,
}

/// What a coordinate point `e_i` looks like on `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordinatePoint {
    /// `x_i^d` occurs in `f`.
    NotOnX,
    /// Tangent weights, all nonzero.
    Isolated(Vec<i64>),
    /// Tangent weights including zeros: a positive-dimensional fixed stratum.
    NotIsolated(Vec<i64>),
}

impl DiagonalHypersurface {
    pub fn new(name: &str, order: u32, weights: &[i64], degree: u32, monomials: Vec<Vec<u32>>) -> Result<Self> {
        let group = FinAbGroup::cyclic(order as i64)?;
        let n = order as i64;
        if weights.len() < 3 {
            return Err(Error::Hypersurface("need at least three coordinates".into()));
        }
        if monomials.is_empty() {
            return Err(Error::Hypersurface("no monomials".into()));
        }
        let weights: Vec<i64> = weights.iter().map(|w| w.rem_euclid(n)).collect();
        let mut chi = None;
        for mono in &monomials {
            if mono.len() != weights.len() {
                return Err(Error::Hypersurface(format!("monomial {mono:?} has the wrong number of exponents")));
            }
            if mono.iter().sum::<u32>() != degree {
                return Err(Error::Hypersurface(format!("monomial {mono:?} does not have degree {degree}")));
            }
            let w = mono.iter().zip(&weights).map(|(&e, &w)| e as i64 * w).sum::<i64>().rem_euclid(n);
            match chi {
                None => chi = Some(w),
                Some(c) if c != w => {
                    return Err(Error::Hypersurface(format!(
                        "not semi-invariant: monomial {mono:?} has weight {w}, others {c}"
                    )))
                }
                _ => {}
            }
        }
        Ok(DiagonalHypersurface { name: name.to_string(), group, order: n, weights, degree, monomials })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    /// Dimension of `X`.
    pub fn dim(&self) -> usize {
        self.weights.len() - 2
    }

    /// The weight `χ_f` shared by all monomials.
    pub fn character(&self) -> i64 {
        let m = &self.monomials[0];
        m.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum::<i64>().rem_euclid(self.order)
    }

    /// Tangent weights at `e_i`: `{w_j - w_i : j ≠ i}` minus one copy of the normal
    /// weight `χ_f - d·w_i`, carried by the directions `x_j` with `x_i^{d-1} x_j` in `f`.
    pub fn fixed_weights(&self, i: usize) -> Result<CoordinatePoint> {
        let k = self.weights.len();
        if i >= k {
            return Err(Error::Hypersurface(format!("no coordinate x_{i}")));
        }
        let d = self.degree;
        if self.monomials.iter().any(|m| m[i] == d) {
            return Ok(CoordinatePoint::NotOnX);
        }
        let n = self.order;
        let wi = self.weights[i];
        let normal = (self.character() - d as i64 * wi).rem_euclid(n);
        let linear: Vec<usize> = (0..k)
            .filter(|&j| j != i)
            .filter(|&j| self.monomials.iter().any(|m| m[i] == d - 1 && m[j] == 1))
            .collect();
        if linear.is_empty() {
            return Err(Error::Hypersurface(format!("e_{i} is a singular point of X: no monomial x_{i}^{}x_j", d - 1)));
        }
        let mut tangent: Vec<i64> = (0..k).filter(|&j| j != i).map(|j| (self.weights[j] - wi).rem_euclid(n)).collect();
        for &j in &linear {
            if (self.weights[j] - wi).rem_euclid(n) != normal {
                return Err(Error::Hypersurface(format!(
                    "direction x_{j} at e_{i} has weight {} instead of the normal weight {normal}",
                    (self.weights[j] - wi).rem_euclid(n)
                )));
            }
        }
        let pos = tangent.iter().position(|&w| w == normal).expect("a linear direction carries the normal weight");
        tangent.remove(pos);
        if tangent.contains(&0) {
            Ok(CoordinatePoint::NotIsolated(tangent))
        } else {
            Ok(CoordinatePoint::Isolated(tangent))
        }
    }

    /// All coordinate points with their status.
    pub fn coordinate_points(&self) -> Vec<(usize, Result<CoordinatePoint>)> {
        (0..self.weights.len()).map(|i| (i, self.fixed_weights(i))).collect()
    }

    /// The fixed-point description, valid when the ambient weights are pairwise
    /// distinct (so the fixed points of `P^N` are the coordinate points) and every
    /// coordinate point on `X` is isolated.
    pub fn to_action(&self) -> Result<ActionDescription> {
        let mut sorted = self.weights.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.weights.len() {
            return Err(Error::Hypersurface(
                "repeated ambient weights: the fixed locus is not a set of coordinate points; declare its components explicitly"
                    .into(),
            ));
        }
        let mut components = Vec::new();
        for (i, p) in self.coordinate_points() {
            match p? {
                CoordinatePoint::NotOnX => {}
                CoordinatePoint::Isolated(ws) => {
                    let chars = ws.iter().map(|&w| self.group.character(&[w])).collect::<Result<Vec<_>>>()?;
                    components.push(FixedComponent::point(chars));
                }
                CoordinatePoint::NotIsolated(_) => {
                    return Err(Error::Hypersurface(format!("e_{i} lies on a positive-dimensional fixed stratum")))
                }
            }
        }
        ActionDescription::new(&self.name, self.group.clone(), self.dim(), components)
    }

    pub fn to_json(&self) -> String {
        let file = super::ClassFile::Hypersurface(HypersurfaceFile {
            format: 1,
            name: self.name.clone(),
            group: self.group.to_string(),
            weights: self.weights.clone(),
            degree: self.degree,
            monomials: self.monomials.clone(),
        });
        serde_json::to_string_pretty(&file).expect("hypersurfaces serialize")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct HypersurfaceFile {
    format: u32,
    pub(crate) name: String,
    group: String,
    weights: Vec<i64>,
    degree: u32,
    monomials: Vec<Vec<u32>>,
}

impl HypersurfaceFile {
    pub(crate) fn build(&self) -> Result<DiagonalHypersurface> {
        check_format(self.format)?;
        let group: FinAbGroup = self.group.parse()?;
        if !group.is_cyclic() || group.factors().is_empty() {
            return Err(Error::Hypersurface(format!("diagonal hypersurfaces need a nontrivial cyclic group, got {group}")));
        }
        DiagonalHypersurface::new(&self.name, group.factors()[0], &self.weights, self.degree, self.monomials.clone())
    }
}
