use puiseux::{Limits, SearchBounds};
use serde::Serialize;

use crate::{CliError, GlobalArgs, OutputFormat};

/// Everything that can change a result, echoed into every JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub output_format: OutputFormat,
    pub bounds: SearchBounds,
    pub factorization_cap: usize,
    pub prime_search_cap: u64,
    pub table_cap: u64,
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            factorization_cap: self.factorization_cap,
            prime_search_cap: self.prime_search_cap,
            table_cap: self.table_cap,
        }
    }

    /// Defaults, then `PUISEUX_CAPS`, then flags.
    pub(crate) fn resolve(args: &GlobalArgs, env_caps: Option<&str>) -> Result<Self, CliError> {
        let mut limits = Limits::default();
        if let Some(list) = env_caps {
            limits = parse_caps(list, limits).map_err(|m| CliError::Usage(format!("PUISEUX_CAPS: {m}")))?;
        }
        if let Some(c) = args.factorization_cap {
            limits.factorization_cap = c;
        }
        if let Some(c) = args.prime_search_cap {
            limits.prime_search_cap = c;
        }
        if let Some(c) = args.table_cap {
            limits.table_cap = c;
        }
        let mut bounds = SearchBounds::default();
        if let Some(b) = args.max_atoms {
            bounds.max_atoms = b;
        }
        if let Some(b) = args.max_atom_value {
            bounds.max_atom_value = b;
        }
        if let Some(b) = args.max_element {
            bounds.max_element = b;
        }
        let positive = [
            ("factorization cap", limits.factorization_cap as u64),
            ("prime search cap", limits.prime_search_cap),
            ("table cap", limits.table_cap),
            ("max atoms", bounds.max_atoms as u64),
            ("max atom value", bounds.max_atom_value),
            ("max element", bounds.max_element),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(CliError::Usage(format!("{name} must be positive")));
        }
        Ok(RunConfig {
            output_format: args.output,
            bounds,
            factorization_cap: limits.factorization_cap,
            prime_search_cap: limits.prime_search_cap,
            table_cap: limits.table_cap,
        })
    }
}

/// Applies a `key=value,...` cap list on top of `base`.
///
/// Keys are `factorization`, `prime_search` and `table`.
///
/// ```
/// use puiseux::Limits;
/// let l = puiseux_cli::parse_caps("table=1024, factorization=10", Limits::default()).unwrap();
/// assert_eq!((l.table_cap, l.factorization_cap), (1024, 10));
/// assert!(puiseux_cli::parse_caps("tabel=1", Limits::default()).is_err());
/// ```
pub fn parse_caps(list: &str, base: Limits) -> Result<Limits, String> {
    let mut limits = base;
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{item}'"))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| format!("'{}' is not a nonnegative integer", value.trim()))?;
        match key.trim() {
            "factorization" => {
                limits.factorization_cap = usize::try_from(value).map_err(|_| "factorization cap too large".to_string())?
            }
            "prime_search" => limits.prime_search_cap = value,
            "table" => limits.table_cap = value,
            other => return Err(format!("unknown cap '{other}'")),
        }
    }
    Ok(limits)
}
