use std::fs;
use std::path::Path;

use ppa::format::{parse_algebra_spec, parse_family_params, parse_laurent, parse_skew_matrix};
use ppa::skewfields::SkewMatrix;
use ppa::torus::TorusData;
use ppa::{Error, LaurentPolynomial};
use ppa::catalog::FamilyParams;
use ppa::poisson::IteratedPPASpec;

pub fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })
}

fn located<T>(path: &Path, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse { location: format!("{}: {location}", path.display()), message },
        other => other,
    })
}

pub fn algebra(path: &Path) -> Result<(IteratedPPASpec, Option<TorusData>), Error> {
    located(path, parse_algebra_spec(&read(path)?))
}

pub fn skew(path: &Path) -> Result<SkewMatrix, Error> {
    located(path, parse_skew_matrix(&read(path)?))
}

pub fn laurent(path: &Path, nvars: usize) -> Result<LaurentPolynomial, Error> {
    located(path, parse_laurent(&read(path)?, nvars))
}

pub fn params(path: &Path) -> Result<FamilyParams, Error> {
    located(path, parse_family_params(&read(path)?))
}
