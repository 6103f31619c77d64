mod common;

use proptest::prelude::*;

use qadder_core::text::{parse, parse_bytes, serialize};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn serialize_parse_round_trip(circuit in common::circuit(1..=5, 12)) {
        let text = serialize(&circuit);
        let back = parse(&text).unwrap();
        prop_assert!(back.structurally_eq(&circuit, 1e-10));
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn single_character_edits_never_panic(
        circuit in common::circuit(1..=4, 6),
        pos in any::<prop::sample::Index>(),
        edit in 0u8..3,
        ch in prop::sample::select(" \t\n#!()*,/.-+0123456789QUBITSXYZHCNOpi\u{e9}".chars().collect::<Vec<char>>()),
    ) {
        let text = serialize(&circuit);
        let mut chars: Vec<char> = text.chars().collect();
        let i = pos.index(chars.len());
        match edit {
            0 => chars[i] = ch,
            1 => chars.insert(i, ch),
            _ => { chars.remove(i); }
        }
        let mutated: String = chars.into_iter().collect();
        if let Ok(c) = parse(&mutated) {
            // anything accepted is a well-formed circuit
            prop_assert!(parse(&serialize(&c)).unwrap().structurally_eq(&c, 1e-10));
        }
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_bytes(&bytes);
    }

    #[test]
    fn grammar_shaped_noise_never_panics(text in "[QUBITSNDXGCHRZPU0-9!() ,.#pi/*\\n\\r+-]{0,120}") {
        let _ = parse(&text);
    }
}

#[test]
fn grammar_breaking_edits_are_rejected() {
    let valid = "QUBITS 3\nCNOT 1 2\nRY(pi/4) 3\nCCNOT 2 !3 1\n";
    assert!(parse(valid).is_ok());
    for broken in [
        "QUBITS 3\nCNOT 1 2 \nRY(pi/4 3\nCCNOT 2 !3 1\n",
        "QUBITS 3\nCNOT 1 2\nRY(pi/4) 3\nCCNOT 2 !3 !1\n",
        "QUBITS 3\nCNOT 1 2\nRY(pi//4) 3\nCCNOT 2 !3 1\n",
        "QUBITS 3\nCNOT 1 4\nRY(pi/4) 3\nCCNOT 2 !3 1\n",
        "QUBITS 3\nCNOT 1 2\nRY(pi/4) 3\nCCNOT 2 !3\n",
        "QUBIT 3\nCNOT 1 2\nRY(pi/4) 3\nCCNOT 2 !3 1\n",
        "QUBITS 3\nCNOT 1 2\nRY(pi/4)3\nCCNOT 2 !3 1\n",
        "QUBITS 3\nCNOT 1 2\nRY(pi/4) 3\nCCNOT 2 !3 1)\n",
    ] {
        let err = parse(broken).unwrap_err();
        assert!(err.line >= 1 && err.column >= 1, "{broken:?}");
    }
}
