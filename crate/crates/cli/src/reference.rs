use cnoidal::waves::BSign;
use serde::Deserialize;

const THETA_TABLES: &str = include_str!("../data/theta_tables.csv");

/// Identifies one of the printed Θ tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableId {
    /// First family, `L = 1`, `B > 0`.
    T1,
    /// First family, `L = 2π`, `B > 0`.
    T2,
    /// First family, `L = 2π`, `B < 0`.
    T3,
    /// Second family, `L ∈ {1, 2π, 50, 100}`.
    T4,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T1, TableId::T2, TableId::T3, TableId::T4];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get((n as usize).checked_sub(1)?).copied()
    }

    pub fn case(self) -> u8 {
        if self == TableId::T4 {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawRow {
    table: u8,
    #[serde(rename = "L")]
    l: f64,
    b: Option<f64>,
    omega: f64,
    k: f64,
    #[serde(rename = "Bsign")]
    sign: String,
    theta: f64,
}

/// One printed Θ entry with the parameters it was computed at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEntry {
    pub table: TableId,
    pub period: f64,
    /// `None` for the second family, where `b = 1/6 − a(k)`.
    pub b: Option<f64>,
    pub omega: f64,
    pub k: f64,
    pub sign: BSign,
    pub theta: f64,
}

/// All embedded reference entries in file order.
pub fn theta_reference() -> Vec<ThetaEntry> {
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(THETA_TABLES.as_bytes());
    rd.deserialize::<RawRow>()
        .map(|r| {
            let r = r.expect("embedded table is well formed");
            ThetaEntry {
                table: TableId::from_number(r.table).expect("table id 1..4"),
                period: r.l,
                b: r.b,
                omega: r.omega,
                k: r.k,
                sign: r.sign.parse().expect("plus or minus"),
                theta: r.theta,
            }
        })
        .collect()
}

pub fn theta_table(id: TableId) -> Vec<ThetaEntry> {
    theta_reference().into_iter().filter(|e| e.table == id).collect()
}
