//! From fused emotion scores to motivated behaviours and access decisions.

use std::fmt;

use crate::fusion::FusedEstimate;
use crate::kb::{behavior_for_emotion, Behavior};

/// Behaviour orientations, strongest first.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NeedProfile {
    /// Strength is the score of the category that motivates the behaviour.
    pub orientations: Vec<(Behavior, f64)>,
    /// Scored categories with no basic-emotion mapping, alphabetical.
    pub unmapped: Vec<String>,
}

impl NeedProfile {
    pub fn strength(&self, behavior: Behavior) -> f64 {
        self.orientations
            .iter()
            .find(|(b, _)| *b == behavior)
            .map(|(_, s)| *s)
            .unwrap_or(0.0)
    }
}

/// Maps each scored basic emotion to its behaviour. When two categories map
/// to the same behaviour (`desire` and `sensuality`), the higher score is
/// kept.
pub fn infer_needs(estimate: &FusedEstimate) -> NeedProfile {
    let mut profile = NeedProfile::default();
    for (category, &score) in &estimate.scores {
        match behavior_for_emotion(category) {
            Ok(behavior) => match profile
                .orientations
                .iter_mut()
                .find(|(b, _)| *b == behavior)
            {
                Some(entry) => entry.1 = entry.1.max(score),
                None => profile.orientations.push((behavior, score)),
            },
            Err(_) => profile.unmapped.push(category.clone()),
        }
    }
    profile.orientations.sort_by(|a, b| {
        b.1.total_cmp(&a.1)
            .then_with(|| a.0.as_str().cmp(b.0.as_str()))
    });
    profile
}

/// Deny access to `resource` when `behavior` is at least `threshold` strong.
#[derive(Clone, Debug, PartialEq)]
pub struct AccessRule {
    pub resource: String,
    pub behavior: Behavior,
    pub threshold: f64,
}

impl fmt::Display for AccessRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} deny_when {} >= {}",
            self.resource,
            self.behavior,
            crate::earl::format_number(self.threshold)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct AccessPolicy {
    pub rules: Vec<AccessRule>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum PolicyError {
    #[error("line {line}: expected `resource deny_when behavior >= threshold`")]
    MalformedLine { line: usize },
    #[error("line {line}: unknown behaviour `{behavior}`")]
    UnknownBehavior { line: usize, behavior: String },
    #[error("line {line}: threshold `{value}` is not a number in [0, 1]")]
    BadThreshold { line: usize, value: String },
    #[error("line {line}: `{resource}` already has a rule for `{behavior}`")]
    DuplicateRule {
        line: usize,
        resource: String,
        behavior: Behavior,
    },
}

impl AccessPolicy {
    /// Reads one `resource_tag deny_when behavior >= threshold` rule per
    /// line; `#` comments and blank lines are skipped.
    pub fn parse(input: &str) -> Result<Self, PolicyError> {
        let mut policy = AccessPolicy::default();
        for (i, raw) in input.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [resource, "deny_when", behavior, ">=", threshold] = fields[..] else {
                return Err(PolicyError::MalformedLine { line });
            };
            let behavior: Behavior =
                behavior.parse().map_err(|_| PolicyError::UnknownBehavior {
                    line,
                    behavior: behavior.to_string(),
                })?;
            let threshold: f64 = threshold
                .parse()
                .ok()
                .filter(|t| (0.0..=1.0).contains(t))
                .ok_or_else(|| PolicyError::BadThreshold {
                    line,
                    value: threshold.to_string(),
                })?;
            if policy
                .rules
                .iter()
                .any(|r| r.resource == resource && r.behavior == behavior)
            {
                return Err(PolicyError::DuplicateRule {
                    line,
                    resource: resource.to_string(),
                    behavior,
                });
            }
            policy.rules.push(AccessRule {
                resource: resource.to_string(),
                behavior,
                threshold,
            });
        }
        Ok(policy)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Allow,
    Deny,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Allow => "allow",
            Verdict::Deny => "deny",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rationale {
    Triggered { rule: AccessRule, strength: f64 },
    NoRuleMatched,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub verdict: Verdict,
    pub rationale: Rationale,
    /// Echo of the estimate's ambiguity flag.
    pub ambiguous: bool,
    /// Scored categories with no behaviour mapping.
    pub unmapped: usize,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.verdict)?;
        match &self.rationale {
            Rationale::Triggered { rule, strength } => write!(
                f,
                "rule `{rule}` triggered ({} = {})",
                rule.behavior,
                crate::earl::format_number(*strength)
            )?,
            Rationale::NoRuleMatched => f.write_str("no rule matched")?,
        }
        if self.ambiguous {
            f.write_str("; estimate is ambiguous")?;
        }
        if self.unmapped > 0 {
            write!(f, "; {} unmapped categor", self.unmapped)?;
            f.write_str(if self.unmapped == 1 { "y" } else { "ies" })?;
        }
        Ok(())
    }
}

/// Denies when the first rule for `resource` (in policy order) whose
/// behaviour strength reaches its threshold fires; allows otherwise.
pub fn decide_access(estimate: &FusedEstimate, resource: &str, policy: &AccessPolicy) -> Decision {
    let needs = infer_needs(estimate);
    let rationale = policy
        .rules
        .iter()
        .filter(|r| r.resource == resource)
        .find_map(|r| {
            let strength = needs.strength(r.behavior);
            (strength >= r.threshold).then(|| Rationale::Triggered {
                rule: r.clone(),
                strength,
            })
        })
        .unwrap_or(Rationale::NoRuleMatched);
    Decision {
        verdict: match rationale {
            Rationale::Triggered { .. } => Verdict::Deny,
            Rationale::NoRuleMatched => Verdict::Allow,
        },
        rationale,
        ambiguous: estimate.ambiguous,
        unmapped: needs.unmapped.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn estimate(scores: &[(&str, f64)]) -> FusedEstimate {
        FusedEstimate {
            scores: scores.iter().map(|(c, s)| (c.to_string(), *s)).collect(),
            ..Default::default()
        }
    }

    fn hazardous() -> AccessPolicy {
        AccessPolicy::parse("hazardous-tool deny_when aggressive >= 0.6\n").unwrap()
    }

    #[test]
    fn anger_means_aggressive() {
        let n = infer_needs(&estimate(&[("anger", 0.8)]));
        assert_eq!(n.orientations, [(Behavior::Aggressive, 0.8)]);
    }

    #[test]
    fn empty_scores_empty_profile() {
        assert_eq!(infer_needs(&estimate(&[])), NeedProfile::default());
    }

    #[test]
    fn sorted_by_strength() {
        let n = infer_needs(&estimate(&[("fear", 0.3), ("joy", 0.6), ("worry", 0.5)]));
        assert_eq!(
            n.orientations,
            [(Behavior::Gratulant, 0.6), (Behavior::Protective, 0.3)]
        );
        assert_eq!(n.unmapped, ["worry"]);
    }

    #[test]
    fn desire_alias_keeps_max() {
        let n = infer_needs(&estimate(&[("desire", 0.2), ("sensuality", 0.5)]));
        assert_eq!(n.orientations, [(Behavior::Searching, 0.5)]);
    }

    #[test]
    fn storekeeper_denies_angry_customer() {
        let d = decide_access(&estimate(&[("anger", 0.8)]), "hazardous-tool", &hazardous());
        assert_eq!(d.verdict, Verdict::Deny);
        let Rationale::Triggered { rule, strength } = &d.rationale else {
            panic!("deny must name a rule")
        };
        assert_eq!(
            rule.to_string(),
            "hazardous-tool deny_when aggressive >= 0.6"
        );
        assert_eq!(*strength, 0.8);
        assert_eq!(
            d.to_string(),
            "deny: rule `hazardous-tool deny_when aggressive >= 0.6` triggered (aggressive = 0.8)"
        );
    }

    #[test]
    fn below_threshold_allows() {
        let d = decide_access(&estimate(&[("anger", 0.5)]), "hazardous-tool", &hazardous());
        assert_eq!(d.verdict, Verdict::Allow);
        assert_eq!(d.rationale, Rationale::NoRuleMatched);
    }

    #[test]
    fn other_resource_allows() {
        let d = decide_access(&estimate(&[("anger", 0.9)]), "bread", &hazardous());
        assert_eq!(d.verdict, Verdict::Allow);
        assert_eq!(d.to_string(), "allow: no rule matched");
    }

    #[test]
    fn first_matching_rule_wins() {
        let policy = AccessPolicy::parse(
            "knife deny_when protective >= 0.9\nknife deny_when aggressive >= 0.5\nknife deny_when dejected >= 0.1\n",
        )
        .unwrap();
        let d = decide_access(
            &estimate(&[("anger", 0.7), ("sadness", 0.4)]),
            "knife",
            &policy,
        );
        let Rationale::Triggered { rule, .. } = d.rationale else {
            panic!()
        };
        assert_eq!(rule.behavior, Behavior::Aggressive);
    }

    #[test]
    fn ambiguity_is_echoed() {
        let mut f = estimate(&[("anger", 0.3), ("joy", 0.3), ("worry", 0.2)]);
        f.ambiguous = true;
        let d = decide_access(&f, "x", &AccessPolicy::default());
        assert_eq!(
            d.to_string(),
            "allow: no rule matched; estimate is ambiguous; 1 unmapped category"
        );
    }

    #[test]
    fn policy_errors() {
        assert!(matches!(
            AccessPolicy::parse("knife deny aggressive >= 0.5"),
            Err(PolicyError::MalformedLine { line: 1 })
        ));
        assert!(matches!(
            AccessPolicy::parse("knife deny_when grumpy >= 0.5"),
            Err(PolicyError::UnknownBehavior { .. })
        ));
        assert!(matches!(
            AccessPolicy::parse("knife deny_when aggressive >= 1.5"),
            Err(PolicyError::BadThreshold { .. })
        ));
        assert!(matches!(
            AccessPolicy::parse(
                "knife deny_when aggressive >= 0.5\nknife deny_when aggressive >= 0.7"
            ),
            Err(PolicyError::DuplicateRule { line: 2, .. })
        ));
        assert_eq!(
            AccessPolicy::parse("# none\n\n").unwrap(),
            AccessPolicy::default()
        );
    }
}
