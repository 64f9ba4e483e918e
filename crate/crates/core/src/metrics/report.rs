use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    Percent,
    Decibel,
    BitsPerByte,
    Dimensionless,
    PValue,
    Count,
    Seconds,
    MegabytesPerSecond,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Percent => "%",
            Unit::Decibel => "dB",
            Unit::BitsPerByte => "bits/byte",
            Unit::Dimensionless => "1",
            Unit::PValue => "p",
            Unit::Count => "count",
            Unit::Seconds => "s",
            Unit::MegabytesPerSecond => "MB/s",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricValue {
    pub label: String,
    pub value: f64,
    pub unit: Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDescriptor {
    pub bytes: u64,
    pub source: String,
}

/// A named measurement; values keep insertion order so output is stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub metric: String,
    pub input: InputDescriptor,
    pub values: Vec<MetricValue>,
}

impl MetricReport {
    pub fn new(metric: impl Into<String>, bytes: u64, source: impl Into<String>) -> Self {
        MetricReport {
            metric: metric.into(),
            input: InputDescriptor {
                bytes,
                source: source.into(),
            },
            values: Vec::new(),
        }
    }

    pub fn with(mut self, label: impl Into<String>, value: f64, unit: Unit) -> Self {
        self.push(label, value, unit);
        self
    }

    pub fn push(&mut self, label: impl Into<String>, value: f64, unit: Unit) {
        self.values.push(MetricValue {
            label: label.into(),
            value,
            unit,
        });
    }

    /// `metric,source,bytes,label,value,unit` rows.
    pub fn csv_rows(&self) -> Vec<[String; 6]> {
        self.values
            .iter()
            .map(|v| {
                [
                    self.metric.clone(),
                    self.input.source.clone(),
                    self.input.bytes.to_string(),
                    v.label.clone(),
                    format!("{}", v.value),
                    v.unit.symbol().to_string(),
                ]
            })
            .collect()
    }
}

pub const CSV_HEADER: [&str; 6] = ["metric", "source", "bytes", "label", "value", "unit"];
