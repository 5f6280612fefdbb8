use std::collections::BTreeMap;

use kgv_core::element_counts::ClassDatum;
use kgv_core::group_orders::{Family, GroupLabel};
use kgv_core::partitions::{Partition, Sign, SignedPartition};
use kgv_core::polyfield::MonicPoly;
use serde::Deserialize;

use crate::error::{input, Result};

/// `FAMILY:M:Q` with the family spelled `GL`, `U`, `Sp`, `O+`, `O-` or `O`.
pub fn parse_group(text: &str) -> Result<GroupLabel> {
    let parts: Vec<&str> = text.split(':').collect();
    let [family, m, q] = parts[..] else {
        return Err(input("group", format!("expected FAMILY:M:Q, got `{text}`")));
    };
    let family: Family = serde_json::from_value(serde_json::Value::String(family.into()))
        .map_err(|_| input("group", format!("unknown family `{family}`")))?;
    let m = m.parse().map_err(|e| input("group", e))?;
    let q = q.parse().map_err(|e| input("group", e))?;
    Ok(GroupLabel::new(family, m, q))
}

pub fn parse_list(what: &'static str, text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|e| input(what, format!("`{s}`: {e}"))))
        .collect()
}

/// `2+,4-` as sizes with signs.
fn parse_signs(text: &str) -> Result<BTreeMap<u32, Sign>> {
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (size, sign) = s.split_at(s.len() - 1);
            let sign = match sign {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                _ => return Err(input("sign", format!("`{s}` must end in + or -"))),
            };
            Ok((size.parse().map_err(|e| input("sign", e))?, sign))
        })
        .collect()
}

#[derive(Debug, Deserialize)]
struct FactorSpec {
    poly: Vec<u32>,
    parts: Vec<u32>,
    #[serde(default)]
    signs: BTreeMap<u32, Sign>,
}

#[derive(Debug, Deserialize)]
struct DatumFile {
    group: String,
    factors: Vec<FactorSpec>,
}

/// A datum as `(group, [(phi, signed partition)])`.
pub struct ParsedDatum {
    pub group: GroupLabel,
    pub factors: Vec<(MonicPoly, SignedPartition)>,
}

impl ParsedDatum {
    pub fn from_file(text: &str) -> Result<Self> {
        let file: DatumFile = serde_json::from_str(text).map_err(|e| input("datum file", e))?;
        let group = parse_group(&file.group)?;
        let factors = file
            .factors
            .into_iter()
            .map(|f| factor(group, f.poly, f.parts, f.signs))
            .collect::<Result<_>>()?;
        Ok(ParsedDatum { group, factors })
    }

    pub fn from_args(group: &str, factors: &[String]) -> Result<Self> {
        let group = parse_group(group)?;
        let factors = factors
            .iter()
            .map(|f| {
                let fields: Vec<&str> = f.split('/').collect();
                let (poly, parts, signs) = match fields[..] {
                    [poly, parts] => (poly, parts, ""),
                    [poly, parts, signs] => (poly, parts, signs),
                    _ => return Err(input("factor", format!("expected COEFFS/PARTS[/SIGNS], got `{f}`"))),
                };
                factor(group, parse_list("polynomial", poly)?, parse_list("partition", parts)?, parse_signs(signs)?)
            })
            .collect::<Result<_>>()?;
        Ok(ParsedDatum { group, factors })
    }

    pub fn signed(&self) -> ClassDatum {
        self.factors
            .iter()
            .fold(ClassDatum::new(self.group), |d, (phi, lambda)| d.with(phi.clone(), lambda.clone()))
    }

    pub fn unsigned(&self) -> BTreeMap<MonicPoly, Partition> {
        self.factors.iter().map(|(phi, l)| (phi.clone(), l.base.clone())).collect()
    }
}

fn factor(group: GroupLabel, poly: Vec<u32>, parts: Vec<u32>, signs: BTreeMap<u32, Sign>) -> Result<(MonicPoly, SignedPartition)> {
    let r = u32::try_from(group.q).map_err(|e| input("group", e))?;
    let phi = MonicPoly::new(r, poly)?;
    Ok((phi, SignedPartition::new(Partition::new(parts), signs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_labels() {
        assert_eq!(parse_group("Sp:2:5").unwrap(), GroupLabel::sp(2, 5));
        assert_eq!(parse_group("O+:2:3").unwrap().family, Family::OPlusEven);
        assert!(parse_group("Sp:2").is_err());
        assert!(parse_group("Spin:2:5").is_err());
    }

    #[test]
    fn inline_factors() {
        let d = ParsedDatum::from_args("Sp:1:3", &["2,1/2/2+".into()]).unwrap();
        let (phi, lambda) = &d.factors[0];
        assert_eq!(*phi, MonicPoly::t_minus_one(3));
        assert_eq!(lambda.signs.get(&2), Some(&Sign::Plus));
        assert!(ParsedDatum::from_args("Sp:1:3", &["2,1".into()]).is_err());
        assert!(ParsedDatum::from_args("Sp:1:3", &["2,1/2/2*".into()]).is_err());
    }

    #[test]
    fn file_datum() {
        let d = ParsedDatum::from_file(r#"{"group": "Sp:2:5", "factors": [{"poly": [1, 1], "parts": [1, 1]}, {"poly": [4, 1], "parts": [1, 1]}]}"#)
            .unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(ParsedDatum::from_file("{}").is_err());
    }
}
