//! Datatype compatibility weights between a requested and an advertised
//! parameter.
//!
//! The table is a 5×5 matrix of integer weights in `[0, 10]`, rows indexed
//! by the requested parameter's datatype and columns by the advertised
//! one's. A weight of 0 means discovery fails for that pair (no edge in
//! the bipartite graph); 10 means the pair matches completely. The matrix
//! is asymmetric: an Integer request served by a Real provider scores 5,
//! while a Real request served by an Integer provider scores 10.
//!
//! The table is data, not code. [`SimilarityTable::parse`] loads a
//! replacement rule file so domain experts can retune weights; the default
//! is the built-in matrix.

use std::fmt;

use thiserror::Error;

use crate::descriptor::DataType;

/// Largest weight a pair can carry; also the self-match weight.
pub const MAX_WEIGHT: u8 = 10;

/// Default requested-row × advertised-column weights.
const DEFAULT_WEIGHTS: [[u8; 5]; 5] = [
    // advertised:  Integer  Real  String  Date  Boolean
    /* Integer */ [10, 5, 3, 1, 1],
    /* Real    */ [10, 10, 1, 0, 1],
    /* String  */ [7, 7, 10, 8, 3],
    /* Date    */ [1, 0, 1, 10, 0],
    /* Boolean */ [1, 0, 1, 0, 10],
];

/// The requested-vs-advertised datatype weight matrix.
///
/// Immutable after construction; lookups are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityTable {
    weights: [[u8; 5]; 5],
}

impl Default for SimilarityTable {
    fn default() -> SimilarityTable {
        SimilarityTable {
            weights: DEFAULT_WEIGHTS,
        }
    }
}

/// A rule-table construction or parse failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown datatype `{token}`")]
    UnknownDataType { line: usize, token: String },
    #[error("weight for ({requested}, {advertised}) is {weight}, outside [0, 10]")]
    WeightOutOfRange {
        requested: DataType,
        advertised: DataType,
        weight: i64,
    },
    #[error("diagonal entry ({datatype}, {datatype}) is {weight}, must be 10")]
    DiagonalNotTen { datatype: DataType, weight: u8 },
    #[error("missing pair ({requested}, {advertised})")]
    MissingPair {
        requested: DataType,
        advertised: DataType,
    },
    #[error("line {line}: duplicate pair ({requested}, {advertised})")]
    DuplicatePair {
        line: usize,
        requested: DataType,
        advertised: DataType,
    },
}

impl SimilarityTable {
    /// Build a table from explicit weights, checking the invariants:
    /// every entry in `[0, 10]` and every diagonal entry exactly 10.
    pub fn new(weights: [[u8; 5]; 5]) -> Result<SimilarityTable, TableError> {
        for requested in DataType::ALL {
            for advertised in DataType::ALL {
                let weight = weights[requested.index()][advertised.index()];
                if weight > MAX_WEIGHT {
                    return Err(TableError::WeightOutOfRange {
                        requested,
                        advertised,
                        weight: i64::from(weight),
                    });
                }
            }
            let weight = weights[requested.index()][requested.index()];
            if weight != MAX_WEIGHT {
                return Err(TableError::DiagonalNotTen {
                    datatype: requested,
                    weight,
                });
            }
        }
        Ok(SimilarityTable { weights })
    }

    /// Weight of serving a `requested` parameter with an `advertised` one.
    ///
    /// 0 signals failed discovery for the pair, 10 a complete match.
    pub fn param_similarity(&self, requested: DataType, advertised: DataType) -> u8 {
        self.weights[requested.index()][advertised.index()]
    }

    /// Load a table from a rule document.
    ///
    /// One `ReqType AdvType Weight` triple per line, in any order;
    /// `#`-to-end-of-line comments and blank lines are ignored. All 25
    /// pairs must be assigned exactly once.
    pub fn parse(text: &str) -> Result<SimilarityTable, TableError> {
        let mut weights = [[0u8; 5]; 5];
        let mut assigned = [[false; 5]; 5];
        for (index, raw_line) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            let mut fields = content.split_whitespace();
            let Some(requested_token) = fields.next() else {
                continue;
            };
            let (Some(advertised_token), Some(weight_token), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(TableError::Syntax {
                    line,
                    message: "expected `ReqType AdvType Weight`".to_string(),
                });
            };
            let requested = DataType::from_token(requested_token).ok_or_else(|| {
                TableError::UnknownDataType {
                    line,
                    token: requested_token.to_string(),
                }
            })?;
            let advertised = DataType::from_token(advertised_token).ok_or_else(|| {
                TableError::UnknownDataType {
                    line,
                    token: advertised_token.to_string(),
                }
            })?;
            let weight: i64 = weight_token.parse().map_err(|_| TableError::Syntax {
                line,
                message: format!("weight `{weight_token}` is not an integer"),
            })?;
            if !(0..=i64::from(MAX_WEIGHT)).contains(&weight) {
                return Err(TableError::WeightOutOfRange {
                    requested,
                    advertised,
                    weight,
                });
            }
            if assigned[requested.index()][advertised.index()] {
                return Err(TableError::DuplicatePair {
                    line,
                    requested,
                    advertised,
                });
            }
            assigned[requested.index()][advertised.index()] = true;
            weights[requested.index()][advertised.index()] = weight as u8;
        }
        for requested in DataType::ALL {
            for advertised in DataType::ALL {
                if !assigned[requested.index()][advertised.index()] {
                    return Err(TableError::MissingPair {
                        requested,
                        advertised,
                    });
                }
            }
        }
        SimilarityTable::new(weights)
    }
}

impl fmt::Display for SimilarityTable {
    /// Renders the table in the rule-file format, row by row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for requested in DataType::ALL {
            for advertised in DataType::ALL {
                writeln!(
                    f,
                    "{requested} {advertised} {}",
                    self.param_similarity(requested, advertised)
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::DataType::*;
    // The glob import shadows the string type with the `String` variant.
    use std::string::String;

    #[test]
    fn default_table_matches_the_rule_matrix() {
        let table = SimilarityTable::default();
        let expected = [
            ((Integer, Integer), 10),
            ((Integer, Real), 5),
            ((Integer, String), 3),
            ((Integer, Date), 1),
            ((Integer, Boolean), 1),
            ((Real, Integer), 10),
            ((Real, Real), 10),
            ((Real, String), 1),
            ((Real, Date), 0),
            ((Real, Boolean), 1),
            ((String, Integer), 7),
            ((String, Real), 7),
            ((String, String), 10),
            ((String, Date), 8),
            ((String, Boolean), 3),
            ((Date, Integer), 1),
            ((Date, Real), 0),
            ((Date, String), 1),
            ((Date, Date), 10),
            ((Date, Boolean), 0),
            ((Boolean, Integer), 1),
            ((Boolean, Real), 0),
            ((Boolean, String), 1),
            ((Boolean, Date), 0),
            ((Boolean, Boolean), 10),
        ];
        assert_eq!(expected.len(), 25);
        for ((requested, advertised), weight) in expected {
            assert_eq!(
                table.param_similarity(requested, advertised),
                weight,
                "({requested}, {advertised})"
            );
        }
    }

    #[test]
    fn lookup_is_asymmetric() {
        let table = SimilarityTable::default();
        assert_eq!(table.param_similarity(Integer, Real), 5);
        assert_eq!(table.param_similarity(Real, Integer), 10);
    }

    #[test]
    fn weights_stay_in_range_and_diagonal_is_ten() {
        let table = SimilarityTable::default();
        for requested in DataType::ALL {
            for advertised in DataType::ALL {
                assert!(table.param_similarity(requested, advertised) <= MAX_WEIGHT);
            }
            assert_eq!(table.param_similarity(requested, requested), MAX_WEIGHT);
        }
    }

    #[test]
    fn parses_a_transcription_of_the_default_table() {
        let doc = SimilarityTable::default().to_string();
        assert_eq!(
            SimilarityTable::parse(&doc).unwrap(),
            SimilarityTable::default()
        );
    }

    #[test]
    fn parse_accepts_comments_and_any_order() {
        let mut doc = String::from("# rule table\n\nreal integer 10 # promoted\n");
        for requested in DataType::ALL {
            for advertised in DataType::ALL {
                if (requested, advertised) == (Real, Integer) {
                    continue;
                }
                let weight = SimilarityTable::default().param_similarity(requested, advertised);
                doc.push_str(&format!("{requested} {advertised} {weight}\n"));
            }
        }
        assert_eq!(
            SimilarityTable::parse(&doc).unwrap(),
            SimilarityTable::default()
        );
    }

    #[test]
    fn parse_rejects_missing_pair() {
        let doc: String = SimilarityTable::default()
            .to_string()
            .lines()
            .filter(|line| !line.starts_with("Date Boolean"))
            .map(|line| format!("{line}\n"))
            .collect();
        assert_eq!(
            SimilarityTable::parse(&doc).unwrap_err(),
            TableError::MissingPair {
                requested: Date,
                advertised: Boolean
            }
        );
    }

    #[test]
    fn parse_rejects_non_ten_diagonal() {
        let doc = SimilarityTable::default()
            .to_string()
            .replace("Integer Integer 10", "Integer Integer 9");
        assert_eq!(
            SimilarityTable::parse(&doc).unwrap_err(),
            TableError::DiagonalNotTen {
                datatype: Integer,
                weight: 9
            }
        );
    }

    #[test]
    fn parse_rejects_out_of_range_weight() {
        let doc = SimilarityTable::default()
            .to_string()
            .replace("Integer Real 5", "Integer Real 11");
        assert_eq!(
            SimilarityTable::parse(&doc).unwrap_err(),
            TableError::WeightOutOfRange {
                requested: Integer,
                advertised: Real,
                weight: 11
            }
        );
    }

    #[test]
    fn parse_rejects_non_integer_weight() {
        let doc = SimilarityTable::default()
            .to_string()
            .replace("Integer Real 5", "Integer Real 5.5");
        assert!(matches!(
            SimilarityTable::parse(&doc).unwrap_err(),
            TableError::Syntax { line: 2, .. }
        ));
    }

    #[test]
    fn parse_rejects_duplicate_pair() {
        let mut doc = SimilarityTable::default().to_string();
        doc.push_str("Integer Real 5\n");
        assert_eq!(
            SimilarityTable::parse(&doc).unwrap_err(),
            TableError::DuplicatePair {
                line: 26,
                requested: Integer,
                advertised: Real
            }
        );
    }

    #[test]
    fn parse_rejects_unknown_datatype() {
        let err = SimilarityTable::parse("Complex Real 5\n").unwrap_err();
        assert_eq!(
            err,
            TableError::UnknownDataType {
                line: 1,
                token: "Complex".to_string()
            }
        );
    }

    #[test]
    fn parse_rejects_malformed_line() {
        let err = SimilarityTable::parse("Integer Real\n").unwrap_err();
        assert!(matches!(err, TableError::Syntax { line: 1, .. }));
    }
}
