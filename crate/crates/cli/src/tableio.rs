//! File formats for function tables: JSON, and a binary container with
//! magic `AORB1` for larger tables.
//!
//! Binary layout (little-endian integers):
//! `AORB1` | u32 p | u32 k | u32 modulus_len | modulus u32s | u32 N |
//! i64 norm_halves | u64 descriptor_json_len | descriptor JSON |
//! q^N records, each record `p - 1` coefficients as
//! u32 byte length + ASCII `num/den`.

use std::io::{Read, Write};

use antiorb_core::cyclotomic::CycNum;
use antiorb_core::transform::{FuncTable, SpaceDescriptor};

pub const MAGIC: &[u8; 5] = b"AORB1";

pub fn read_table(path: &str) -> Result<FuncTable, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("reading {path}: {e}"))?;
    let table = if bytes.starts_with(MAGIC) {
        read_binary(&bytes[5..]).map_err(|e| format!("parsing {path}: {e}"))?
    } else {
        serde_json::from_slice::<FuncTable>(&bytes).map_err(|e| format!("parsing {path}: {e}"))?
    };
    table
        .validate()
        .map_err(|e| format!("validating {path}: {e}"))?;
    Ok(table)
}

pub fn write_table(path: &str, table: &FuncTable) -> Result<(), String> {
    let bytes = if path.ends_with(".aorb") || path.ends_with(".bin") {
        write_binary(table)
    } else {
        let mut v = serde_json::to_vec_pretty(table).map_err(|e| e.to_string())?;
        v.push(b'\n');
        v
    };
    std::fs::write(path, bytes).map_err(|e| format!("writing {path}: {e}"))
}

fn write_binary(table: &FuncTable) -> Vec<u8> {
    let f = &table.space.field;
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&f.p().to_le_bytes());
    out.extend_from_slice(&(f.k() as u32).to_le_bytes());
    out.extend_from_slice(&(f.modulus().len() as u32).to_le_bytes());
    for &c in f.modulus() {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out.extend_from_slice(&(table.space.dim() as u32).to_le_bytes());
    out.extend_from_slice(&table.norm_halves.to_le_bytes());
    let desc = serde_json::to_vec(&table.space).expect("descriptor serializes");
    out.extend_from_slice(&(desc.len() as u64).to_le_bytes());
    out.extend_from_slice(&desc);
    for v in &table.values {
        for s in v.to_strings() {
            out.extend_from_slice(&(s.len() as u32).to_le_bytes());
            out.extend_from_slice(s.as_bytes());
        }
    }
    out
}

fn read_binary(mut rest: &[u8]) -> Result<FuncTable, String> {
    fn take<'a>(rest: &mut &'a [u8], n: usize) -> Result<&'a [u8], String> {
        if rest.len() < n {
            return Err("truncated binary table".into());
        }
        let (head, tail) = rest.split_at(n);
        *rest = tail;
        Ok(head)
    }
    fn u32_at(rest: &mut &[u8]) -> Result<u32, String> {
        let b = take(rest, 4)?;
        Ok(u32::from_le_bytes(b.try_into().unwrap()))
    }
    let p = u32_at(&mut rest)?;
    let _k = u32_at(&mut rest)?;
    let mlen = u32_at(&mut rest)? as usize;
    for _ in 0..mlen {
        u32_at(&mut rest)?;
    }
    let n_coords = u32_at(&mut rest)? as usize;
    let norm_halves = i64::from_le_bytes(take(&mut rest, 8)?.try_into().unwrap());
    let dlen = u64::from_le_bytes(take(&mut rest, 8)?.try_into().unwrap()) as usize;
    let desc: SpaceDescriptor =
        serde_json::from_slice(take(&mut rest, dlen)?).map_err(|e| e.to_string())?;
    if desc.dim() != n_coords {
        return Err("descriptor does not match coordinate count".into());
    }
    let n_points = desc.num_points();
    if n_points > u64::MAX as u128 {
        return Err("table too large".into());
    }
    let mut values = Vec::with_capacity(n_points as usize);
    for _ in 0..n_points {
        let mut parts = Vec::with_capacity(p as usize - 1);
        for _ in 0..p - 1 {
            let len = u32_at(&mut rest)? as usize;
            let s = take(&mut rest, len)?;
            parts.push(String::from_utf8(s.to_vec()).map_err(|e| e.to_string())?);
        }
        values.push(CycNum::from_strings(p as usize, &parts).map_err(|e| e.to_string())?);
    }
    Ok(FuncTable {
        space: desc,
        values,
        norm_halves,
    })
}

pub fn read_to_string(path: &str) -> Result<String, String> {
    let mut s = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut s))
        .map_err(|e| format!("reading {path}: {e}"))?;
    Ok(s)
}

pub fn write_string(path: &str, content: &str) -> Result<(), String> {
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(content.as_bytes()))
        .map_err(|e| format!("writing {path}: {e}"))
}
