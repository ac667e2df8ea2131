use std::path::Path;

use crate::error::{Error, Result};
use crate::signal::{check_event, validate_record, OperationRecord, RegistrationEvent};

use super::{format_number, read_file, write_file, Manifest};

const EVENTS_HEADER: [&str; 3] = ["time", "channel", "quantity"];

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse {
        line: e.position().map(|p| p.line()),
        message: e.to_string(),
    }
}

fn parse_number(field: &str, what: &str, line: u64) -> Result<f64> {
    let x: f64 = field.parse().map_err(|_| Error::Parse {
        line: Some(line),
        message: format!("{what} {field:?} is not a number"),
    })?;
    if !x.is_finite() {
        return Err(Error::NonFiniteValue {
            what: format!("{what} at line {line}"),
        });
    }
    Ok(x)
}

/// Parses an events log with header `time,channel,quantity`.
pub fn parse_events(text: &str, manifest: &Manifest) -> Result<OperationRecord> {
    let mut rdr = reader(text);
    let header = rdr.headers().map_err(csv_error)?;
    if header.iter().ne(EVENTS_HEADER) {
        return Err(Error::Parse {
            line: Some(1),
            message: format!("header must be `time,channel,quantity`, got `{}`", header.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut events = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        let time = parse_number(&row[0], "time", line)?;
        let channel = row[1].to_string();
        let quantity = parse_number(&row[2], "quantity", line)?;
        if manifest.channel(&channel).is_none() {
            return Err(Error::UnknownChannel {
                channel,
                line: Some(line),
            });
        }
        let event = RegistrationEvent::new(time, channel, quantity);
        check_event(&event).map_err(|e| e.with_line(line))?;
        events.push(event);
    }
    validate_record(OperationRecord {
        channels: manifest.channels.clone(),
        events,
    })
}

pub fn load_events(path: impl AsRef<Path>, manifest: &Manifest) -> Result<OperationRecord> {
    parse_events(&read_file(path.as_ref())?, manifest)
}

/// Parses a gridded log with header `time,<channel>,...`. Each nonzero cell
/// is the quantity registered in that bin and becomes one event at the bin
/// time. Times must be uniformly spaced; pass `dt` to pin the spacing,
/// otherwise it is taken from the first two rows.
pub fn parse_gridded(text: &str, manifest: &Manifest, dt: Option<f64>) -> Result<OperationRecord> {
    if let Some(dt) = dt {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Parse {
                line: None,
                message: format!("grid step must be positive, got {dt}"),
            });
        }
    }
    let mut rdr = reader(text);
    let header = rdr.headers().map_err(csv_error)?.clone();
    if header.get(0) != Some("time") {
        return Err(Error::Parse {
            line: Some(1),
            message: "first column of a gridded file must be `time`".into(),
        });
    }
    let channels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    for id in &channels {
        if manifest.channel(id).is_none() {
            return Err(Error::UnknownChannel {
                channel: id.clone(),
                line: Some(1),
            });
        }
    }

    let mut events = Vec::new();
    let mut step = dt;
    let mut prev: Option<f64> = None;
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        let time = parse_number(&row[0], "time", line)?;
        if let Some(p) = prev {
            let found = time - p;
            let expected = *step.get_or_insert(found);
            let tol = 1e-9 * time.abs().max(p.abs()).max(1.0);
            if found <= 0.0 || (found - expected).abs() > tol {
                return Err(Error::NonUniformGrid {
                    line,
                    expected,
                    found,
                });
            }
        }
        prev = Some(time);

        for (id, cell) in channels.iter().zip(row.iter().skip(1)) {
            if cell.is_empty() {
                continue;
            }
            let q = parse_number(cell, "quantity", line)?;
            if q == 0.0 {
                continue;
            }
            let event = RegistrationEvent::new(time, id.clone(), q);
            check_event(&event).map_err(|e| e.with_line(line))?;
            events.push(event);
        }
    }
    validate_record(OperationRecord {
        channels: manifest.channels.clone(),
        events,
    })
}

pub fn load_gridded(
    path: impl AsRef<Path>,
    manifest: &Manifest,
    dt: Option<f64>,
) -> Result<OperationRecord> {
    parse_gridded(&read_file(path.as_ref())?, manifest, dt)
}

pub fn events_to_csv(record: &OperationRecord) -> String {
    let mut out = String::from("time,channel,quantity\n");
    for e in &record.events {
        out.push_str(&format!(
            "{},{},{}\n",
            format_number(e.time),
            e.channel,
            format_number(e.quantity)
        ));
    }
    out
}

pub fn write_events(record: &OperationRecord, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &events_to_csv(record))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::ChannelSpec;

    fn unit() -> Manifest {
        Manifest::new(vec![ChannelSpec::input("in", 1.0), ChannelSpec::output("out", 1.0)]).unwrap()
    }

    #[test]
    fn reads_reference_operation() {
        let rec = parse_events("time,channel,quantity\n2,in,2\n8,out,3\n", &unit()).unwrap();
        assert_eq!(
            rec.events,
            vec![
                RegistrationEvent::new(2.0, "in", 2.0),
                RegistrationEvent::new(8.0, "out", 3.0)
            ]
        );
    }

    #[test]
    fn empty_body_gives_empty_record() {
        let rec = parse_events("time,channel,quantity\n", &unit()).unwrap();
        assert!(rec.is_empty());
    }

    #[test]
    fn reports_line_of_bad_rows() {
        let err = parse_events("time,channel,quantity\n1,in,1\n2,in,0\n", &unit()).unwrap_err();
        assert!(matches!(err, Error::NonPositiveQuantity { line: Some(3), .. }), "{err:?}");

        let err = parse_events("time,channel,quantity\n1,x,1\n", &unit()).unwrap_err();
        assert!(matches!(err, Error::UnknownChannel { line: Some(2), .. }));

        let err = parse_events("time,channel,quantity\n1,in,abc\n", &unit()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: Some(2), .. }));

        let err = parse_events("t,channel,quantity\n", &unit()).unwrap_err();
        assert_eq!(err.name(), "ParseError");

        let err = parse_events("time,channel,quantity\n1,in\n", &unit()).unwrap_err();
        assert_eq!(err.name(), "ParseError");
    }

    #[test]
    fn gridded_matches_events() {
        let grid = parse_gridded("time,in,out\n2,2,0\n8,0,3\n", &unit(), None).unwrap();
        let events = parse_events("time,channel,quantity\n2,in,2\n8,out,3\n", &unit()).unwrap();
        assert_eq!(grid, events);
    }

    #[test]
    fn gridded_all_zero_is_empty() {
        let rec = parse_gridded("time,in,out\n0,0,0\n1,0,0\n2,,0\n", &unit(), Some(1.0)).unwrap();
        assert!(rec.is_empty());
    }

    #[test]
    fn gridded_rejects_nonuniform_times() {
        let err = parse_gridded("time,in,out\n0,1,0\n1,0,0\n3,0,1\n", &unit(), None).unwrap_err();
        assert!(matches!(err, Error::NonUniformGrid { line: 4, .. }), "{err:?}");

        let err = parse_gridded("time,in,out\n0,1,0\n1,0,1\n", &unit(), Some(0.5)).unwrap_err();
        assert_eq!(err.name(), "NonUniformGrid");

        let err = parse_gridded("time,in,out\n1,1,0\n1,0,1\n", &unit(), None).unwrap_err();
        assert_eq!(err.name(), "NonUniformGrid");
    }

    #[test]
    fn gridded_tolerates_decimal_steps() {
        let rec = parse_gridded("time,in,out\n0,1,0\n0.1,0,0\n0.2,0,0\n0.3,0,2\n", &unit(), None).unwrap();
        assert_eq!(rec.events.len(), 2);
    }

    #[test]
    fn gridded_rejects_unknown_columns_and_negative_cells() {
        let err = parse_gridded("time,in,nope\n0,1,0\n", &unit(), None).unwrap_err();
        assert_eq!(err.name(), "UnknownChannel");
        let err = parse_gridded("time,in,out\n0,-1,0\n", &unit(), None).unwrap_err();
        assert!(matches!(err, Error::NonPositiveQuantity { line: Some(2), .. }));
    }

    #[test]
    fn writes_parseable_events() {
        let rec = parse_events("time,channel,quantity\n0.1,in,2.5\n8,out,3\n", &unit()).unwrap();
        let text = events_to_csv(&rec);
        assert_eq!(text, "time,channel,quantity\n0.1,in,2.5\n8,out,3\n");
        assert_eq!(parse_events(&text, &unit()).unwrap(), rec);
    }
}
