use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One computed quantity, as emitted on a single output line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// One of `zeta_deriv`, `hurwitz_deriv`, `L`, `varpi`, `kinkelin`, `gengamma`.
    pub quantity: String,
    pub k: i64,
    pub w_or_x: Option<String>,
    pub value: String,
    pub err_estimate: String,
    pub method: String,
    pub params: BTreeMap<String, Value>,
}

impl OutputRecord {
    /// `name(k[,w]) = value  (± err)`
    pub fn text_line(&self) -> String {
        let arg = match &self.w_or_x {
            Some(w) => format!("{},{w}", self.k),
            None => self.k.to_string(),
        };
        format!(
            "{}({arg}) = {}  (± {})",
            self.quantity, self.value, self.err_estimate
        )
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut params = BTreeMap::new();
        params.insert("digits".to_string(), Value::from(12));
        OutputRecord {
            quantity: "hurwitz_deriv".into(),
            k: 1,
            w_or_x: Some("0.5".into()),
            value: "0.0538294393269".into(),
            err_estimate: "1.1e-33".into(),
            method: "asymptotic-shift".into(),
            params,
        }
    }

    #[test]
    fn text_layout() {
        assert_eq!(
            sample().text_line(),
            "hurwitz_deriv(1,0.5) = 0.0538294393269  (± 1.1e-33)"
        );
        let mut r = sample();
        r.w_or_x = None;
        assert!(r.text_line().starts_with("hurwitz_deriv(1) = "));
    }

    #[test]
    fn json_round_trip() {
        let line = sample().json_line();
        let back: OutputRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.json_line(), line);
    }
}
