use crate::TokenId;

/// Streaming matcher for one token sequence using the prefix function.
#[derive(Clone, Debug)]
pub(crate) struct SeqMatcher {
    pattern: Vec<TokenId>,
    fail: Vec<usize>,
    matched: usize,
}

impl SeqMatcher {
    pub fn new(pattern: Vec<TokenId>) -> Self {
        let fail = prefix_function(&pattern);
        SeqMatcher { pattern, fail, matched: 0 }
    }

    pub fn pattern(&self) -> &[TokenId] {
        &self.pattern
    }

    pub fn matched(&self) -> usize {
        self.matched
    }

    pub fn expected(&self) -> Option<TokenId> {
        self.pattern.get(self.matched).copied()
    }

    /// Feeds one token; returns true when the pattern has just been completed.
    pub fn advance(&mut self, token: TokenId) -> bool {
        if self.pattern.is_empty() {
            return false;
        }
        let mut k = self.matched;
        while k > 0 && self.pattern[k] != token {
            k = self.fail[k - 1];
        }
        if self.pattern[k] == token {
            k += 1;
        }
        if k == self.pattern.len() {
            self.matched = self.fail[k - 1];
            true
        } else {
            self.matched = k;
            false
        }
    }
}

/// `fail[i]` is the length of the longest proper prefix of `p[..=i]` that is also its suffix.
pub(crate) fn prefix_function(p: &[TokenId]) -> Vec<usize> {
    let mut fail = vec![0; p.len()];
    let mut k = 0;
    for i in 1..p.len() {
        while k > 0 && p[i] != p[k] {
            k = fail[k - 1];
        }
        if p[i] == p[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}
