//! Human-readable summaries for the `platform`, `simulate` and `attack`
//! subcommands.

use std::fmt::Write as _;

use cke_core::pc::PcPresentation;
use cke_core::platform::{GroupElement, PlatformSpec};
use cke_core::protocol::{PublicView, Transcript};

/// Whether the fixture's unit subgroup has smaller rank than expected.
pub fn hirsch_shortfall(p: &PlatformSpec) -> Option<usize> {
    p.expected_hirsch_length()
        .filter(|&h| h > p.hirsch_length())
}

pub fn platform_report(p: &PlatformSpec, pc: &PcPresentation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "platform: {}", p.name());
    let _ = writeln!(s, "polynomial: {}", p.field().polynomial());
    let _ = writeln!(s, "degree n: {}", p.degree());
    let _ = writeln!(s, "unit generators m: {}", p.unit_count());
    let _ = writeln!(s, "torsion order k: {}", p.torsion_order());
    if let Some((r, c)) = p.signature() {
        let _ = writeln!(s, "signature: ({r}, {c})");
    }
    let _ = writeln!(s, "h(G) computed: {}", p.hirsch_length());
    match p.expected_hirsch_length() {
        Some(h) => {
            let _ = writeln!(s, "h(G) expected: {h}");
        }
        None => {
            let _ = writeln!(s, "h(G) expected: unknown");
        }
    }
    if let Some(h) = hirsch_shortfall(p) {
        let _ = writeln!(
            s,
            "WARNING: computed h(G) = {} is smaller than expected {h}; the fixture lists too few independent units",
            p.hirsch_length()
        );
    }
    let _ = writeln!(s, "pc-presentation:");
    for line in pc.to_string().lines() {
        let _ = writeln!(s, "  {line}");
    }
    s
}

pub fn element_line(g: &GroupElement) -> String {
    format!("({}, {})", g.unit(), g.translation())
}

pub fn view_report(view: &PublicView<GroupElement>) -> String {
    let mut s = String::new();
    for (label, v) in [
        ("a", &view.alice_public),
        ("b", &view.bob_public),
        ("b^A", &view.alice_conjugates),
        ("a^B", &view.bob_conjugates),
    ] {
        for (i, g) in v.iter().enumerate() {
            let _ = writeln!(s, "{label}[{}] = {}", i + 1, element_line(g));
        }
    }
    s
}

pub fn transcript_report(t: &Transcript<GroupElement>) -> String {
    let mut s = view_report(&t.view);
    let _ = writeln!(s, "A word: {}", t.words.alice_private);
    let _ = writeln!(s, "B word: {}", t.words.bob_private);
    let _ = writeln!(s, "K = [A, B] = {}", element_line(&t.shared_key));
    let _ = writeln!(s, "K_A = K_B = [A, B]: verified");
    s
}
