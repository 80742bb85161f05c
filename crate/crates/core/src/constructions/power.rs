use super::Layout;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::words::Word;

/// The `|x|`-state cycle spelling `x`, starting and accepting at state 0.
/// At length `m|x|` it accepts exactly `x^m`.
pub fn power_automaton(x: &Word) -> Result<Nfa> {
    if x.is_empty() {
        return Err(Error::precondition("the power automaton needs a non-empty word"));
    }
    let mut layout = Layout::new(x.alphabet_size());
    layout.cycle(0, x);
    layout.build(0)
}
