use crate::Format;

/// One output line: a record kind and its fields, in order.
#[derive(Debug, Clone, Default)]
pub struct Record {
    kind: String,
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            kind: kind.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fields(mut self, pairs: impl IntoIterator<Item = (String, String)>) -> Self {
        self.fields.extend(pairs);
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    records: Vec<Record>,
    /// File-format output printed verbatim in either format.
    raw: Option<String>,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn set_raw(&mut self, text: String) {
        self.raw = Some(text);
    }

    pub fn render(&self, format: Format) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = String::new();
        for r in &self.records {
            match format {
                Format::Machine => {
                    out.push_str("record=");
                    out.push_str(&r.kind);
                    for (k, v) in &r.fields {
                        out.push(' ');
                        out.push_str(k);
                        out.push('=');
                        out.push_str(&machine_value(v));
                    }
                }
                Format::Text => {
                    out.push_str(&r.kind);
                    for (i, (k, v)) in r.fields.iter().enumerate() {
                        out.push_str(if i == 0 { ": " } else { ", " });
                        out.push_str(k);
                        out.push(' ');
                        out.push_str(v);
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Machine values never contain spaces or `=`.
fn machine_value(v: &str) -> String {
    v.chars()
        .map(|c| match c {
            ' ' => '_',
            '=' => ':',
            c => c,
        })
        .collect()
}

pub fn join<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        return "-".to_string();
    }
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
