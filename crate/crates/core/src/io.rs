//! JSON input schemas and canonical renderings shared by the command-line
//! front end and the bundled fixture corpus.
//!
//! Every rational quantity travels as a fraction string (`"-3/2"`, `"5"`),
//! never as a float, and every expression as the canonical text format of
//! [`crate::exact::parse_ratexpr`]. Each spec type mirrors one input schema
//! and converts into the corresponding domain object, reporting violations
//! with a JSON-style path into the document.

use serde::{Deserialize, Serialize};

use crate::dualgraph::{BlowupSite, Coefficient, Curve, ResolutionGraph, Role};
use crate::elliptic::TorusSubgroup;
use crate::exact::{
    parse_ratexpr, parse_rational, rational_to_string, EExpr, ExactError, Rational, Var,
};
use crate::orbifold::{OrbifoldDatum, RotationRecord, SectorRecord};
use crate::stringy::StringyMode;
use crate::toric::{Fan2D, ToricPair};

/// Schema-level failure: where in the document, and what went wrong.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("at {path}: {msg}")]
pub struct SchemaError {
    pub path: String,
    pub msg: String,
}

impl SchemaError {
    fn new(path: impl Into<String>, msg: impl std::fmt::Display) -> Self {
        SchemaError {
            path: path.into(),
            msg: msg.to_string(),
        }
    }
}

fn rational_at(path: &str, text: &str) -> Result<Rational, SchemaError> {
    parse_rational(text).map_err(|e| SchemaError::new(path, e))
}

fn expr_at(path: &str, text: &str) -> Result<EExpr, SchemaError> {
    parse_ratexpr(text).map_err(|e| SchemaError::new(path, e))
}

/// One decorated curve of a dual-graph document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub id: String,
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub self_int: i64,
    /// `"exceptional"` or `"boundary"`.
    pub role: String,
    /// Required for boundary curves; optional (pre-solved) for exceptional
    /// ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
}

/// A resolution dual graph: decorated curves plus intersection nodes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub nodes: Vec<[String; 2]>,
    /// E-polynomial of the smooth ambient surface; required by global mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_e: Option<String>,
}

impl GraphSpec {
    pub fn to_graph(&self) -> Result<ResolutionGraph, SchemaError> {
        let mut curves = Vec::with_capacity(self.curves.len());
        for (i, c) in self.curves.iter().enumerate() {
            let path = format!("curves[{i}]");
            let coeff = match &c.coeff {
                Some(text) => Coefficient::Known(rational_at(&format!("{path}.coeff"), text)?),
                None => Coefficient::Unsolved,
            };
            let role = match c.role.as_str() {
                "exceptional" => Role::Exceptional,
                "boundary" => {
                    if c.coeff.is_none() {
                        return Err(SchemaError::new(
                            format!("{path}.coeff"),
                            "boundary curves need a coefficient",
                        ));
                    }
                    Role::StrictTransform
                }
                other => {
                    return Err(SchemaError::new(
                        format!("{path}.role"),
                        format!("unknown role {other:?}; expected \"exceptional\" or \"boundary\""),
                    ));
                }
            };
            curves.push(Curve {
                id: c.id.clone(),
                genus: c.genus,
                self_int: c.self_int,
                role,
                coeff,
            });
        }
        let nodes: Vec<(String, String)> = self
            .nodes
            .iter()
            .map(|[a, b]| (a.clone(), b.clone()))
            .collect();
        ResolutionGraph::new(curves, &nodes).map_err(|e| SchemaError::new("nodes", e))
    }

    /// Renders a graph back into its document form (solved coefficients
    /// included), so blow-up outputs round-trip.
    pub fn from_graph(g: &ResolutionGraph) -> Self {
        let curves = g
            .curves()
            .iter()
            .map(|c| CurveSpec {
                id: c.id.clone(),
                genus: c.genus,
                self_int: c.self_int,
                role: match c.role {
                    Role::Exceptional => "exceptional".to_string(),
                    Role::StrictTransform => "boundary".to_string(),
                },
                coeff: match &c.coeff {
                    Coefficient::Known(r) => Some(rational_to_string(r)),
                    Coefficient::Unsolved => None,
                },
            })
            .collect();
        let nodes = g
            .node_indices()
            .iter()
            .map(|&(i, j)| [g.curves()[i].id.clone(), g.curves()[j].id.clone()])
            .collect();
        GraphSpec {
            curves,
            nodes,
            ambient_e: None,
        }
    }

    /// Resolves the strata mode for this document: local, or global with
    /// the document's ambient E-polynomial.
    pub fn mode(&self, global: bool) -> Result<StringyMode, SchemaError> {
        if !global {
            return Ok(StringyMode::Local);
        }
        match &self.ambient_e {
            Some(text) => Ok(StringyMode::Global(expr_at("ambient_e", text)?)),
            None => Err(SchemaError::new(
                "ambient_e",
                "global mode needs the ambient E-polynomial",
            )),
        }
    }
}

/// Fixed-locus component of one group-element class.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SectorSpec {
    FixedCurve {
        class_id: String,
        curve: String,
        normal_weight: String,
        #[serde(default)]
        divisor_weights: Vec<(String, String)>,
    },
    FixedPoint {
        class_id: String,
        #[serde(default)]
        curves: Vec<String>,
        weights: Vec<String>,
    },
}

/// A coefficient −1 curve rotated into itself by a class.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationSpec {
    pub class_id: String,
    pub curve: String,
    pub alpha: String,
    pub gamma1: String,
    pub gamma2: String,
}

/// A cover with its sector data: the input of the orbifold calculus.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbifoldSpec {
    pub graph: GraphSpec,
    #[serde(default)]
    pub sectors: Vec<SectorSpec>,
    #[serde(default)]
    pub rotations: Vec<RotationSpec>,
}

impl OrbifoldSpec {
    pub fn to_datum(&self) -> Result<OrbifoldDatum, SchemaError> {
        let graph = self.graph.to_graph()?;
        let mut sectors = Vec::with_capacity(self.sectors.len());
        for (i, s) in self.sectors.iter().enumerate() {
            let path = format!("sectors[{i}]");
            sectors.push(match s {
                SectorSpec::FixedCurve {
                    class_id,
                    curve,
                    normal_weight,
                    divisor_weights,
                } => SectorRecord::FixedCurve {
                    class_id: class_id.clone(),
                    curve: curve.clone(),
                    normal_weight: rational_at(&format!("{path}.normal_weight"), normal_weight)?,
                    divisor_weights: divisor_weights
                        .iter()
                        .enumerate()
                        .map(|(j, (id, w))| {
                            Ok((
                                id.clone(),
                                rational_at(&format!("{path}.divisor_weights[{j}]"), w)?,
                            ))
                        })
                        .collect::<Result<_, SchemaError>>()?,
                },
                SectorSpec::FixedPoint {
                    class_id,
                    curves,
                    weights,
                } => SectorRecord::FixedPoint {
                    class_id: class_id.clone(),
                    curves: curves.clone(),
                    weights: weights
                        .iter()
                        .enumerate()
                        .map(|(j, w)| rational_at(&format!("{path}.weights[{j}]"), w))
                        .collect::<Result<_, SchemaError>>()?,
                },
            });
        }
        let mut rotations = Vec::with_capacity(self.rotations.len());
        for (i, r) in self.rotations.iter().enumerate() {
            let path = format!("rotations[{i}]");
            rotations.push(RotationRecord {
                class_id: r.class_id.clone(),
                curve: r.curve.clone(),
                alpha: rational_at(&format!("{path}.alpha"), &r.alpha)?,
                gamma1: rational_at(&format!("{path}.gamma1"), &r.gamma1)?,
                gamma2: rational_at(&format!("{path}.gamma2"), &r.gamma2)?,
            });
        }
        Ok(OrbifoldDatum {
            graph,
            sectors,
            rotations,
        })
    }
}

/// Input of the correspondence check: a cover and the quotient it covers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McKaySpec {
    pub cover: OrbifoldSpec,
    pub quotient: GraphSpec,
}

/// A toric pair: a complete smooth fan with one coefficient per ray, and
/// optionally a finite subgroup of the torus given by generators in turns.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricSpec {
    pub rays: Vec<[i64; 2]>,
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<[String; 2]>>,
}

impl ToricSpec {
    pub fn to_pair(&self) -> Result<ToricPair, SchemaError> {
        let fan = Fan2D::new(self.rays.clone()).map_err(|e| SchemaError::new("rays", e))?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| rational_at(&format!("coeffs[{i}]"), c))
            .collect::<Result<Vec<_>, _>>()?;
        ToricPair::new(fan, coeffs).map_err(|e| SchemaError::new("coeffs", e))
    }

    /// The torus subgroup generated by the listed elements; trivial when
    /// the field is absent.
    pub fn to_group(&self) -> Result<TorusSubgroup, SchemaError> {
        match &self.group {
            None => Ok(TorusSubgroup::trivial()),
            Some(gens) => {
                let mut parsed = Vec::with_capacity(gens.len());
                for (i, [a, b]) in gens.iter().enumerate() {
                    parsed.push([
                        rational_at(&format!("group[{i}][0]"), a)?,
                        rational_at(&format!("group[{i}][1]"), b)?,
                    ]);
                }
                Ok(TorusSubgroup::new(&parsed))
            }
        }
    }

    pub fn has_group(&self) -> bool {
        self.group.is_some()
    }
}

/// Where to blow up.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SiteSpec {
    FreePoint,
    PointOn { curve: String },
    Node { curves: [String; 2] },
}

/// Input of the blow-up command: a graph, a site, and the id of the new
/// exceptional curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupSpec {
    pub graph: GraphSpec,
    pub site: SiteSpec,
    pub new_id: String,
}

impl BlowupSpec {
    pub fn to_site(&self) -> BlowupSite {
        match &self.site {
            SiteSpec::FreePoint => BlowupSite::FreePoint,
            SiteSpec::PointOn { curve } => BlowupSite::PointOn(curve.clone()),
            SiteSpec::Node { curves: [a, b] } => BlowupSite::Node(a.clone(), b.clone()),
        }
    }
}

/// Input of the limit command: a quotient of expressions and the variable
/// sent to 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitSpec {
    pub numerator: String,
    pub denominator: String,
    /// One of `"u"`, `"v"`, `"s"`, `"t"`, `"y"`, `"z"`.
    pub var: String,
}

impl LimitSpec {
    pub fn parse(&self) -> Result<(EExpr, EExpr, Var), SchemaError> {
        let num = expr_at("numerator", &self.numerator)?;
        let den = expr_at("denominator", &self.denominator)?;
        let var = match self.var.as_str() {
            "u" => Var::U,
            "v" => Var::V,
            "s" => Var::S,
            "t" => Var::T,
            "y" => Var::Y,
            "z" => Var::Z,
            other => {
                return Err(SchemaError::new(
                    "var",
                    format!("unknown variable {other:?}; expected one of u, v, s, t, y, z"),
                ));
            }
        };
        Ok((num, den, var))
    }
}

/// Renders a `q`-series as the `[exponent, coefficient]` list used by the
/// JSON output mode.
pub fn qseries_to_json(s: &crate::elliptic::QSeries) -> serde_json::Value {
    serde_json::json!({
        "order": s.order(),
        "coefficients": s
            .entries()
            .iter()
            .map(|(k, c)| serde_json::json!([rational_to_string(k), c.to_string()]))
            .collect::<Vec<_>>(),
    })
}

/// Convenience: exact error text for schema messages.
impl From<ExactError> for SchemaError {
    fn from(e: ExactError) -> Self {
        SchemaError::new("<input>", e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_document_round_trips() {
        let text = r#"{
            "curves": [
                {"id": "C", "genus": 1, "self_int": -4, "role": "exceptional"},
                {"id": "B", "role": "boundary", "coeff": "-1/2"}
            ],
            "nodes": [["C", "B"]]
        }"#;
        let spec: GraphSpec = serde_json::from_str(text).unwrap();
        let graph = spec.to_graph().unwrap();
        assert_eq!(graph.curves().len(), 2);
        let rendered = GraphSpec::from_graph(&graph);
        let graph2 = rendered.to_graph().unwrap();
        assert_eq!(graph.curves(), graph2.curves());
        assert_eq!(graph.node_indices(), graph2.node_indices());
    }

    #[test]
    fn schema_errors_carry_paths() {
        let spec: GraphSpec = serde_json::from_str(
            r#"{"curves": [{"id": "B", "role": "boundary", "coeff": "half"}]}"#,
        )
        .unwrap();
        let err = spec.to_graph().unwrap_err();
        assert_eq!(err.path, "curves[0].coeff");

        let spec: GraphSpec =
            serde_json::from_str(r#"{"curves": [{"id": "B", "role": "edge"}]}"#).unwrap();
        let err = spec.to_graph().unwrap_err();
        assert_eq!(err.path, "curves[0].role");
    }

    #[test]
    fn toric_document_parses_group() {
        let spec: ToricSpec = serde_json::from_str(
            r#"{
                "rays": [[1,0],[0,1],[-1,-1]],
                "coeffs": ["0","0","-3"],
                "group": [["1/2","0"]]
            }"#,
        )
        .unwrap();
        let pair = spec.to_pair().unwrap();
        assert!(pair.is_cy());
        assert_eq!(spec.to_group().unwrap().order(), 2);
    }

    #[test]
    fn limit_document_parses() {
        let spec: LimitSpec = serde_json::from_str(
            r#"{"numerator": "w - 1", "denominator": "w^2 - 1", "var": "u"}"#,
        )
        .unwrap();
        let (num, den, var) = spec.parse().unwrap();
        assert_eq!(var, Var::U);
        assert!(!num.is_zero_expr());
        assert!(!den.is_zero_expr());
    }
}
