//! Turning a command-line space argument into a generator set.

use std::path::PathBuf;
use std::str::FromStr;

use mbspline::sampling::{canonical_functionals, uniform_functionals, AnalysisFunctional};
use mbspline::{build_mb_spline, named_basis, BasisId, GeneratorSet};

use crate::CliError;

/// A named basis id, a degree vector such as `4,5`, or a basis JSON file.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Named(BasisId),
    Degrees(Vec<u32>),
    File(PathBuf),
}

impl FromStr for SpaceSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(id) = s.parse::<BasisId>() {
            return Ok(SpaceSpec::Named(id));
        }
        let s = s.trim();
        if s.is_empty() {
            return Err(CliError::Usage("empty space argument".into()));
        }
        if s.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) {
            return parse_degrees(s).map(SpaceSpec::Degrees);
        }
        Ok(SpaceSpec::File(PathBuf::from(s)))
    }
}

/// Comma-separated, strictly increasing naturals.
pub fn parse_degrees(s: &str) -> Result<Vec<u32>, CliError> {
    let degrees = s
        .split(',')
        .map(|d| d.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad degree vector `{s}`")))?;
    if degrees.is_empty() || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(format!("degree vector `{s}` must be nonempty and strictly increasing")));
    }
    Ok(degrees)
}

/// A resolved basis plus the functionals used when none are given.
#[derive(Debug, Clone)]
pub struct Space {
    pub label: String,
    pub gs: GeneratorSet,
    pub default_functionals: Vec<AnalysisFunctional>,
}

impl SpaceSpec {
    pub fn load(&self) -> Result<Space, CliError> {
        match self {
            SpaceSpec::Named(id) => Ok(Space {
                label: id.to_string(),
                gs: named_basis(*id)?,
                default_functionals: canonical_functionals(*id),
            }),
            SpaceSpec::Degrees(n) => {
                let gs = build_mb_spline(n)?;
                Ok(Space {
                    label: join(n),
                    default_functionals: uniform_functionals(gs.len()),
                    gs,
                })
            }
            SpaceSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                let gs: GeneratorSet = serde_json::from_str(&text)?;
                if gs.is_empty() {
                    return Err(CliError::Usage(format!("{}: basis has no generators", path.display())));
                }
                if gs.degrees.is_empty() || gs.degrees.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(CliError::Usage(format!("{}: degrees must be strictly increasing", path.display())));
                }
                let named = gs.postprocess.as_ref().and_then(|p| p.id.parse::<BasisId>().ok());
                let default_functionals = match named {
                    Some(id) if canonical_functionals(id).len() == gs.len() => canonical_functionals(id),
                    _ => uniform_functionals(gs.len()),
                };
                Ok(Space {
                    label: path.display().to_string(),
                    gs,
                    default_functionals,
                })
            }
        }
    }
}

pub(crate) fn join(n: &[u32]) -> String {
    n.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_arguments() {
        assert_eq!("hermite_cubic".parse::<SpaceSpec>().unwrap(), SpaceSpec::Named(BasisId::HermiteCubic));
        assert_eq!("4, 5".parse::<SpaceSpec>().unwrap(), SpaceSpec::Degrees(vec![4, 5]));
        assert_eq!("b.json".parse::<SpaceSpec>().unwrap(), SpaceSpec::File("b.json".into()));
        for bad in ["", "3,2", "1,,2", "2,2"] {
            assert!(matches!(bad.parse::<SpaceSpec>(), Err(CliError::Usage(_))), "{bad}");
        }
    }
}
