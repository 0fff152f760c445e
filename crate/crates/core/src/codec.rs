//! Encoding, local repair and erasure decoding for codes given by a
//! parity-check matrix with all-ones block rows.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldContext, FieldElement};
use crate::lrc::{build_parity_check, code_params_from_family, nullspace, CodeParams, Matrix, ParityCheckMatrix};
use crate::setfam::SetFamily;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword(pub Vec<FieldElement>);

impl Codeword {
    pub fn symbols(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A word read from storage; `None` marks an erasure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord(pub Vec<Option<FieldElement>>);

impl ReceivedWord {
    pub fn from_codeword(c: &Codeword) -> Self {
        ReceivedWord(c.0.iter().copied().map(Some).collect())
    }

    pub fn symbols(&self) -> &[Option<FieldElement>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn erase(&mut self, positions: &[usize]) -> Result<()> {
        for &p in positions {
            if p >= self.0.len() {
                return Err(Error::LengthMismatch {
                    expected: self.0.len(),
                    actual: p + 1,
                });
            }
            self.0[p] = None;
        }
        Ok(())
    }

    /// Erased positions, ascending.
    pub fn erasures(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].is_none()).collect()
    }

    /// The word itself if nothing is erased.
    pub fn complete(&self) -> Option<Codeword> {
        self.0.iter().copied().collect::<Option<Vec<_>>>().map(Codeword)
    }
}

/// Coordinates `block*(r+1) .. (block+1)*(r+1)`; every codeword sums to
/// zero over them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairGroup {
    pub block: usize,
    pub positions: Vec<usize>,
}

/// The `m` consecutive groups of size `r + 1`.
pub fn repair_groups(m: usize, r: usize) -> Vec<RepairGroup> {
    (0..m)
        .map(|block| RepairGroup {
            block,
            positions: (block * (r + 1)..(block + 1) * (r + 1)).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRepair {
    pub position: usize,
    pub value: FieldElement,
    /// Positions read to compute `value`.
    pub read: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepairPath {
    /// Nothing was erased.
    None,
    Local,
    Global,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairOutcome {
    pub codeword: Codeword,
    pub path: RepairPath,
    pub symbols_read: usize,
}

/// Generator matrix whose rows span the right nullspace of `h`. Row `i` is
/// 1 at information position `info[i]` and 0 at the other information
/// positions, where `info` are the non-pivot columns of `rref(h)`.
pub fn generator_from_parity(field: &FieldContext, h: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    let (g, info) = nullspace(field, h);
    if g.rows() == 0 {
        return Err(Error::params(
            "parity-check matrix has full column rank: the code is trivial",
        ));
    }
    Ok((g, info))
}

/// `message * g`.
pub fn encode(field: &FieldContext, g: &Matrix, message: &[FieldElement]) -> Result<Codeword> {
    Ok(Codeword(g.vec_mul(field, message)?))
}

/// `h * word^T`.
pub fn syndrome(field: &FieldContext, h: &Matrix, word: &[FieldElement]) -> Result<Vec<FieldElement>> {
    h.mul_vec(field, word)
}

pub fn is_codeword(field: &FieldContext, h: &Matrix, word: &[FieldElement]) -> Result<bool> {
    Ok(syndrome(field, h, word)?.iter().all(|s| s.is_zero()))
}

/// Recovers the single erased symbol as the negated sum of its group-mates.
pub fn local_repair(field: &FieldContext, word: &ReceivedWord, groups: &[RepairGroup]) -> Result<LocalRepair> {
    let erased = word.erasures();
    if erased.len() != 1 {
        return Err(Error::NotSingleErasure(erased.len()));
    }
    let position = erased[0];
    let group = groups
        .iter()
        .find(|g| g.positions.contains(&position))
        .ok_or_else(|| Error::params(format!("position {position} lies in no repair group")))?;
    local_repair_in_group(field, word, group, position)
}

fn local_repair_in_group(
    field: &FieldContext,
    word: &ReceivedWord,
    group: &RepairGroup,
    position: usize,
) -> Result<LocalRepair> {
    let mut sum = FieldElement::ZERO;
    let mut read = Vec::with_capacity(group.positions.len() - 1);
    for &j in &group.positions {
        if j == position {
            continue;
        }
        let v = word.0[j].ok_or(Error::GroupMateErased { position: j })?;
        sum = field.add(sum, v);
        read.push(j);
    }
    Ok(LocalRepair {
        position,
        value: field.neg(sum),
        read,
    })
}

/// Fills the erasures of `word` by solving `H_E x = -H_K c_K` over the
/// erased columns `E`.
pub fn erasure_decode(field: &FieldContext, h: &Matrix, word: &ReceivedWord) -> Result<Codeword> {
    if word.len() != h.cols() {
        return Err(Error::LengthMismatch {
            expected: h.cols(),
            actual: word.len(),
        });
    }
    let erased = word.erasures();
    let known: Vec<FieldElement> = word.0.iter().map(|s| s.unwrap_or(FieldElement::ZERO)).collect();
    let s = h.mul_vec(field, &known)?;
    // augmented system [H_E | -s]
    let e = erased.len();
    let mut aug = Matrix::zeros(h.rows(), e + 1);
    for (row, &sv) in s.iter().enumerate() {
        for (j, &c) in erased.iter().enumerate() {
            aug.set(row, j, h.get(row, c));
        }
        aug.set(row, e, field.neg(sv));
    }
    let ech = aug.rref(field);
    if ech.pivots.last() == Some(&e) {
        return Err(Error::Inconsistent);
    }
    if ech.pivots.len() < e {
        return Err(Error::Unrecoverable { erasures: e });
    }
    let mut out = known;
    for (j, &c) in erased.iter().enumerate() {
        out[c] = ech.matrix.get(j, e);
    }
    Ok(Codeword(out))
}

/// For every position `i` and its group-mates `R_i`, checks over all
/// codewords of the row space of `g` that `c_{R_i}` determines `c_i`:
/// the projections onto `R_i` of codewords with different `c_i` are
/// disjoint. Returns the first position where this fails.
pub fn projection_violation(
    field: &FieldContext,
    g: &Matrix,
    groups: &[RepairGroup],
    max_codewords: u64,
) -> Result<Option<usize>> {
    let q = field.order() as u64;
    let k = g.rows() as u32;
    let total = q
        .checked_pow(k)
        .filter(|&t| t <= max_codewords)
        .ok_or(Error::BudgetExceeded {
            required: (q as u128).saturating_pow(k),
            budget: max_codewords as u128,
        })?;
    let codewords: Vec<Vec<FieldElement>> = (0..total)
        .map(|mut idx| {
            let msg: Vec<FieldElement> = (0..k)
                .map(|_| {
                    let digit = idx % q;
                    idx /= q;
                    field.elem(digit).expect("digit below q")
                })
                .collect();
            g.vec_mul(field, &msg)
        })
        .collect::<Result<_>>()?;
    for group in groups {
        for &i in &group.positions {
            let mut seen: HashMap<Vec<FieldElement>, FieldElement> = HashMap::new();
            for c in &codewords {
                let proj: Vec<FieldElement> = group.positions.iter().filter(|&&j| j != i).map(|&j| c[j]).collect();
                if *seen.entry(proj).or_insert(c[i]) != c[i] {
                    return Ok(Some(i));
                }
            }
        }
    }
    Ok(None)
}

/// A code built from a set family: parity-check matrix, systematic
/// generator and repair groups.
#[derive(Clone, Debug)]
pub struct Code {
    params: CodeParams,
    h: ParityCheckMatrix,
    g: Matrix,
    info: Vec<usize>,
    groups: Vec<RepairGroup>,
}

impl Code {
    pub fn from_family(field: Arc<FieldContext>, family: &SetFamily, d: usize) -> Result<Self> {
        let params = code_params_from_family(field.clone(), family, d)?;
        let family = family.with_t(family.t().max((d - 1) / 2))?;
        let h = build_parity_check(field.clone(), &family, d)?;
        let (g, info) = generator_from_parity(&field, h.matrix())?;
        if g.rows() != params.k {
            return Err(Error::RankDeficient {
                expected: params.k,
                actual: g.rows(),
            });
        }
        let groups = repair_groups(params.m, params.r);
        Ok(Code {
            params,
            h,
            g,
            info,
            groups,
        })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        self.h.field()
    }

    pub fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn generator(&self) -> &Matrix {
        &self.g
    }

    /// Positions holding the message symbols verbatim.
    pub fn information_set(&self) -> &[usize] {
        &self.info
    }

    pub fn repair_groups(&self) -> &[RepairGroup] {
        &self.groups
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Codeword> {
        encode(self.field(), &self.g, message)
    }

    /// Message recovered from the information positions.
    pub fn message_of(&self, c: &Codeword) -> Vec<FieldElement> {
        self.info.iter().map(|&i| c.0[i]).collect()
    }

    pub fn syndrome(&self, word: &[FieldElement]) -> Result<Vec<FieldElement>> {
        syndrome(self.field(), self.h.matrix(), word)
    }

    pub fn is_codeword(&self, word: &[FieldElement]) -> Result<bool> {
        is_codeword(self.field(), self.h.matrix(), word)
    }

    pub fn local_repair(&self, word: &ReceivedWord) -> Result<LocalRepair> {
        self.check_len(word)?;
        local_repair(self.field(), word, &self.groups)
    }

    pub fn erasure_decode(&self, word: &ReceivedWord) -> Result<Codeword> {
        erasure_decode(self.field(), self.h.matrix(), word)
    }

    /// Repairs each group with a single erasure locally; if any group has
    /// two or more, decodes the whole word globally instead.
    pub fn repair(&self, word: &ReceivedWord) -> Result<RepairOutcome> {
        self.check_len(word)?;
        let erased = word.erasures();
        if erased.is_empty() {
            let c = word.complete().expect("no erasures");
            if !self.is_codeword(&c.0)? {
                return Err(Error::Inconsistent);
            }
            return Ok(RepairOutcome {
                codeword: c,
                path: RepairPath::None,
                symbols_read: 0,
            });
        }
        let local_ok = self
            .groups
            .iter()
            .all(|g| g.positions.iter().filter(|p| word.0[**p].is_none()).count() <= 1);
        if local_ok {
            let mut out = word.clone();
            let mut read = 0;
            for &p in &erased {
                let group = &self.groups[self.h.block_of(p)];
                let fix = local_repair_in_group(self.field(), word, group, p)?;
                read += fix.read.len();
                out.0[p] = Some(fix.value);
            }
            let c = out.complete().expect("all erasures filled");
            if !self.is_codeword(&c.0)? {
                return Err(Error::Inconsistent);
            }
            return Ok(RepairOutcome {
                codeword: c,
                path: RepairPath::Local,
                symbols_read: read,
            });
        }
        let c = self.erasure_decode(word)?;
        Ok(RepairOutcome {
            codeword: c,
            path: RepairPath::Global,
            symbols_read: word.len() - erased.len(),
        })
    }

    fn check_len(&self, word: &ReceivedWord) -> Result<()> {
        if word.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: word.len(),
            });
        }
        Ok(())
    }
}
