//! Operation logs and their reduction to impulse trains.
//!
//! A log stores magnitudes and channel roles. Two signed views are derived
//! from it: the cost domain (inputs negative, outputs positive) and the
//! reserve domain (inputs add stock, outputs remove it).

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{exact, to_f64, zero, Exact};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Output,
}

/// A registered product and its unit cost estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub id: String,
    pub role: Role,
    pub unit_cost: f64,
}

impl ChannelSpec {
    pub fn new(id: impl Into<String>, role: Role, unit_cost: f64) -> Self {
        ChannelSpec {
            id: id.into(),
            role,
            unit_cost,
        }
    }

    pub fn input(id: impl Into<String>, unit_cost: f64) -> Self {
        Self::new(id, Role::Input, unit_cost)
    }

    pub fn output(id: impl Into<String>, unit_cost: f64) -> Self {
        Self::new(id, Role::Output, unit_cost)
    }
}

/// A quantity of product crossing the system boundary at an instant.
#[derive(Clone, Debug, PartialEq)]
pub struct RegistrationEvent {
    pub time: f64,
    pub channel: String,
    pub quantity: f64,
}

impl RegistrationEvent {
    pub fn new(time: f64, channel: impl Into<String>, quantity: f64) -> Self {
        RegistrationEvent {
            time,
            channel: channel.into(),
            quantity,
        }
    }
}

/// Channel declarations plus registration events.
///
/// Build through [`OperationRecord::new`] or [`validate_record`]; the
/// analysis functions assume a validated record.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct OperationRecord {
    pub channels: Vec<ChannelSpec>,
    pub events: Vec<RegistrationEvent>,
}

impl OperationRecord {
    pub fn new(channels: Vec<ChannelSpec>, events: Vec<RegistrationEvent>) -> Result<Self> {
        validate_record(OperationRecord { channels, events })
    }

    pub fn channel(&self, id: &str) -> Option<&ChannelSpec> {
        self.channels.iter().find(|c| c.id == id)
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Whether at least one input and one output registration exist, i.e.
    /// whether this log describes a complete target operation.
    pub fn has_both_roles(&self) -> bool {
        let mut seen = (false, false);
        for e in &self.events {
            match self.channel(&e.channel).map(|c| c.role) {
                Some(Role::Input) => seen.0 = true,
                Some(Role::Output) => seen.1 = true,
                None => {}
            }
        }
        seen == (true, true)
    }

    fn events_with_role(&self) -> impl Iterator<Item = (&RegistrationEvent, &ChannelSpec)> {
        let by_id: HashMap<&str, &ChannelSpec> =
            self.channels.iter().map(|c| (c.id.as_str(), c)).collect();
        self.events
            .iter()
            .filter_map(move |e| by_id.get(e.channel.as_str()).map(|c| (e, *c)))
    }
}

pub(crate) fn check_channel(c: &ChannelSpec) -> Result<()> {
    if !c.unit_cost.is_finite() {
        return Err(Error::NonFiniteValue {
            what: format!("unit cost of channel `{}`", c.id),
        });
    }
    if c.unit_cost < 0.0 {
        return Err(Error::Validation {
            channel: c.id.clone(),
            message: format!("unit cost {} is negative", c.unit_cost),
        });
    }
    Ok(())
}

pub(crate) fn check_event(e: &RegistrationEvent) -> Result<()> {
    if !e.time.is_finite() || !e.quantity.is_finite() {
        return Err(Error::NonFiniteValue {
            what: format!("event on channel `{}`", e.channel),
        });
    }
    if e.quantity <= 0.0 {
        return Err(Error::NonPositiveQuantity {
            channel: e.channel.clone(),
            time: e.time,
            quantity: e.quantity,
            line: None,
        });
    }
    Ok(())
}

/// Checks every record invariant, sorts events by time (ties by channel id)
/// and merges same-time events on the same channel.
pub fn validate_record(record: OperationRecord) -> Result<OperationRecord> {
    let OperationRecord { channels, events } = record;
    for (i, c) in channels.iter().enumerate() {
        check_channel(c)?;
        if channels[..i].iter().any(|d| d.id == c.id) {
            return Err(Error::Validation {
                channel: c.id.clone(),
                message: "duplicate channel id".into(),
            });
        }
    }
    for e in &events {
        if !channels.iter().any(|c| c.id == e.channel) {
            return Err(Error::UnknownChannel {
                channel: e.channel.clone(),
                line: None,
            });
        }
        check_event(e)?;
    }

    let mut events = events;
    events.sort_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then_with(|| a.channel.cmp(&b.channel))
    });
    let mut merged: Vec<RegistrationEvent> = Vec::with_capacity(events.len());
    for e in events {
        match merged.last_mut() {
            Some(last) if last.time == e.time && last.channel == e.channel => {
                last.quantity += e.quantity;
            }
            _ => merged.push(e),
        }
    }
    Ok(OperationRecord {
        channels,
        events: merged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Impulse {
    pub time: f64,
    pub amount: f64,
}

/// Time-sorted signed impulses with distinct times and nonzero amounts.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ImpulseTrain {
    impulses: Vec<Impulse>,
}

impl ImpulseTrain {
    pub fn empty() -> Self {
        ImpulseTrain::default()
    }

    /// Sorts, merges same-time impulses by exact summation and drops the
    /// ones that cancel to zero.
    pub fn new(impulses: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut raw: Vec<(f64, f64)> = impulses.into_iter().collect();
        if raw.iter().any(|(t, a)| !t.is_finite() || !a.is_finite()) {
            return Err(Error::NonFiniteValue {
                what: "impulse train".into(),
            });
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut out = Vec::with_capacity(raw.len());
        let mut i = 0;
        while i < raw.len() {
            let time = raw[i].0;
            let mut sum = zero();
            while i < raw.len() && raw[i].0.partial_cmp(&time) == Some(Ordering::Equal) {
                sum += exact(raw[i].1);
                i += 1;
            }
            let amount = to_f64(&sum);
            if amount != 0.0 {
                out.push(Impulse { time, amount });
            }
        }
        Ok(ImpulseTrain { impulses: out })
    }

    pub fn impulses(&self) -> &[Impulse] {
        &self.impulses
    }

    pub fn len(&self) -> usize {
        self.impulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.impulses.is_empty()
    }

    pub fn total_exact(&self) -> Exact {
        self.impulses.iter().map(|i| exact(i.amount)).sum()
    }

    pub fn total(&self) -> f64 {
        to_f64(&self.total_exact())
    }

    /// Σ |amount|·time, the first moment of the magnitudes.
    pub(crate) fn moment_exact(&self) -> Exact {
        self.impulses
            .iter()
            .map(|i| exact(i.amount.abs()) * exact(i.time))
            .sum()
    }

    pub(crate) fn magnitude_exact(&self) -> Exact {
        self.impulses.iter().map(|i| exact(i.amount.abs())).sum()
    }

    pub fn shifted(&self, dt: f64) -> Result<Self> {
        ImpulseTrain::new(self.impulses.iter().map(|i| (i.time + dt, i.amount)))
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        ImpulseTrain::new(self.impulses.iter().map(|i| (i.time, i.amount * factor)))
    }
}

/// Cost-domain trains `(re, pe)`: inputs as `-(unit_cost * quantity)`,
/// outputs as `+(unit_cost * quantity)`. Zero-cost channels are skipped.
pub fn cost_impulses(record: &OperationRecord) -> (ImpulseTrain, ImpulseTrain) {
    let mut re = Vec::new();
    let mut pe = Vec::new();
    for (e, c) in record.events_with_role() {
        if c.unit_cost == 0.0 {
            continue;
        }
        let value = c.unit_cost * e.quantity;
        match c.role {
            Role::Input => re.push((e.time, -value)),
            Role::Output => pe.push((e.time, value)),
        }
    }
    // Validated records hold only finite values.
    (
        ImpulseTrain::new(re).expect("finite costs"),
        ImpulseTrain::new(pe).expect("finite costs"),
    )
}

/// Quantity-domain train: inputs add stock, outputs remove it.
pub fn reserve_impulses(record: &OperationRecord) -> ImpulseTrain {
    let q = record.events_with_role().map(|(e, c)| match c.role {
        Role::Input => (e.time, e.quantity),
        Role::Output => (e.time, -e.quantity),
    });
    ImpulseTrain::new(q).expect("finite quantities")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ore_metal() -> Vec<ChannelSpec> {
        vec![ChannelSpec::input("ore", 1.0), ChannelSpec::output("metal", 1.0)]
    }

    fn pairs(t: &ImpulseTrain) -> Vec<(f64, f64)> {
        t.impulses().iter().map(|i| (i.time, i.amount)).collect()
    }

    #[test]
    fn valid_record_is_unchanged() {
        let events = vec![RegistrationEvent::new(2.0, "ore", 2.0)];
        let rec = OperationRecord::new(ore_metal(), events.clone()).unwrap();
        assert_eq!(rec.events, events);
    }

    #[test]
    fn merges_same_time_same_channel() {
        let rec = OperationRecord::new(
            ore_metal(),
            vec![
                RegistrationEvent::new(5.0, "ore", 1.0),
                RegistrationEvent::new(5.0, "ore", 3.0),
            ],
        )
        .unwrap();
        assert_eq!(rec.events, vec![RegistrationEvent::new(5.0, "ore", 4.0)]);
    }

    #[test]
    fn sorts_by_time_then_channel_id() {
        let rec = OperationRecord::new(
            ore_metal(),
            vec![
                RegistrationEvent::new(5.0, "ore", 1.0),
                RegistrationEvent::new(5.0, "metal", 1.0),
                RegistrationEvent::new(1.0, "ore", 1.0),
            ],
        )
        .unwrap();
        let order: Vec<_> = rec
            .events
            .iter()
            .map(|e| (e.time, e.channel.as_str()))
            .collect();
        assert_eq!(order, vec![(1.0, "ore"), (5.0, "metal"), (5.0, "ore")]);
    }

    #[test]
    fn rejects_bad_records() {
        let err = OperationRecord::new(ore_metal(), vec![RegistrationEvent::new(1.0, "x", 1.0)])
            .unwrap_err();
        assert!(matches!(err, Error::UnknownChannel { ref channel, .. } if channel == "x"));

        let err = OperationRecord::new(ore_metal(), vec![RegistrationEvent::new(1.0, "ore", 0.0)])
            .unwrap_err();
        assert_eq!(err.name(), "NonPositiveQuantity");

        let err = OperationRecord::new(
            ore_metal(),
            vec![RegistrationEvent::new(f64::NAN, "ore", 1.0)],
        )
        .unwrap_err();
        assert_eq!(err.name(), "NonFiniteValue");

        let mut chans = ore_metal();
        chans.push(ChannelSpec::input("ore", 2.0));
        assert_eq!(
            OperationRecord::new(chans, vec![]).unwrap_err().name(),
            "ValidationError"
        );

        let chans = vec![ChannelSpec::input("ore", -1.0)];
        assert_eq!(
            OperationRecord::new(chans, vec![]).unwrap_err().name(),
            "ValidationError"
        );
    }

    #[test]
    fn cost_impulses_of_reduced_operation() {
        let rec = OperationRecord::new(
            ore_metal(),
            vec![
                RegistrationEvent::new(2.0, "ore", 2.0),
                RegistrationEvent::new(8.0, "metal", 3.0),
            ],
        )
        .unwrap();
        let (re, pe) = cost_impulses(&rec);
        assert_eq!(pairs(&re), vec![(2.0, -2.0)]);
        assert_eq!(pairs(&pe), vec![(8.0, 3.0)]);
        assert!(rec.has_both_roles());
    }

    #[test]
    fn cost_impulses_of_staged_inputs() {
        let rec = OperationRecord::new(
            ore_metal(),
            vec![
                RegistrationEvent::new(0.0, "ore", 1.0),
                RegistrationEvent::new(4.0, "ore", 1.0),
                RegistrationEvent::new(6.0, "metal", 4.0),
            ],
        )
        .unwrap();
        let (re, pe) = cost_impulses(&rec);
        assert_eq!(pairs(&re), vec![(0.0, -1.0), (4.0, -1.0)]);
        assert_eq!(pairs(&pe), vec![(6.0, 4.0)]);
    }

    #[test]
    fn empty_record_gives_empty_trains() {
        let rec = OperationRecord::new(ore_metal(), vec![]).unwrap();
        let (re, pe) = cost_impulses(&rec);
        assert!(re.is_empty() && pe.is_empty());
        assert!(reserve_impulses(&rec).is_empty());
        assert!(!rec.has_both_roles());
    }

    #[test]
    fn zero_cost_channel_only_counts_for_reserves() {
        let chans = vec![ChannelSpec::input("power", 0.0), ChannelSpec::output("metal", 1.0)];
        let rec = OperationRecord::new(
            chans,
            vec![
                RegistrationEvent::new(1.0, "power", 5.0),
                RegistrationEvent::new(3.0, "metal", 5.0),
            ],
        )
        .unwrap();
        let (re, _) = cost_impulses(&rec);
        assert!(re.is_empty());
        assert_eq!(pairs(&reserve_impulses(&rec)), vec![(1.0, 5.0), (3.0, -5.0)]);
    }

    #[test]
    fn reserve_signs() {
        let rec = OperationRecord::new(
            ore_metal(),
            vec![
                RegistrationEvent::new(2.0, "ore", 2.0),
                RegistrationEvent::new(8.0, "metal", 2.0),
            ],
        )
        .unwrap();
        assert_eq!(pairs(&reserve_impulses(&rec)), vec![(2.0, 2.0), (8.0, -2.0)]);

        let rec = OperationRecord::new(
            ore_metal(),
            vec![
                RegistrationEvent::new(0.0, "ore", 1.0),
                RegistrationEvent::new(4.0, "ore", 1.0),
                RegistrationEvent::new(6.0, "metal", 2.0),
            ],
        )
        .unwrap();
        assert_eq!(reserve_impulses(&rec).total(), 0.0);
    }

    #[test]
    fn train_merges_and_drops_cancelled() {
        let t = ImpulseTrain::new([(3.0, 1.0), (1.0, 2.0), (3.0, -1.0), (1.0, 0.5)]).unwrap();
        assert_eq!(pairs(&t), vec![(1.0, 2.5)]);
        assert!(ImpulseTrain::new([(0.0, f64::INFINITY)]).is_err());
    }
}
