mod common;

use common::{check_tiling, lex_oracle};
use proptest::prelude::*;
use wysiwim::render::{lex, LanguageProfile, TokenClass};

fn spans(src: &str, p: &LanguageProfile) -> Vec<(usize, usize, TokenClass)> {
    lex(src, p).into_iter().map(|s| (s.start, s.end, s.class)).collect()
}

fn hash_profile() -> LanguageProfile {
    LanguageProfile {
        name: "hashy".into(),
        keywords: ["let", "fn", "if"].iter().map(|s| s.to_string()).collect(),
        line_comment: "#".into(),
        block_comment_open: "{-".into(),
        block_comment_close: "-}".into(),
        string_delim: '`',
        char_delim: '|',
    }
}

/// Sources biased toward the characters that drive lexer decisions.
fn code_like() -> impl Strategy<Value = String> {
    let atoms = prop_oneof![
        Just("int".to_string()),
        Just("if".to_string()),
        Just("let".to_string()),
        Just("//".to_string()),
        Just("/*".to_string()),
        Just("*/".to_string()),
        Just("\"".to_string()),
        Just("'".to_string()),
        Just("\\".to_string()),
        Just("\n".to_string()),
        Just("{-".to_string()),
        Just("-}".to_string()),
        Just("#".to_string()),
        Just("`".to_string()),
        "[0-9]{1,3}(\\.[0-9]{0,2})?",
        "[A-Za-z_][A-Za-z0-9_]{0,5}",
        "[ \t\r]{1,3}",
        "[!-~]",
    ];
    prop::collection::vec(atoms, 0..40).prop_map(|v| v.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printable_ascii_matches_oracle(src in "[ -~\t\n\r]{0,120}") {
        for p in [LanguageProfile::java(), LanguageProfile::c(), hash_profile()] {
            let got = spans(&src, &p);
            prop_assert_eq!(check_tiling(&src, &got), Ok(()));
            prop_assert_eq!(got, lex_oracle(&src, &p));
        }
    }

    #[test]
    fn code_like_matches_oracle(src in code_like()) {
        for p in [LanguageProfile::java(), hash_profile()] {
            let got = spans(&src, &p);
            prop_assert_eq!(check_tiling(&src, &got), Ok(()));
            prop_assert_eq!(got, lex_oracle(&src, &p));
        }
    }

    #[test]
    fn any_unicode_tiles(src in "\\PC{0,60}") {
        let got = spans(&src, &LanguageProfile::java());
        prop_assert_eq!(check_tiling(&src, &got), Ok(()));
    }

    #[test]
    fn keywords_are_maximal_word_runs(src in code_like()) {
        let p = LanguageProfile::java();
        let b = src.as_bytes();
        let word = |c: u8| c == b'_' || c.is_ascii_alphanumeric();
        for (s, e, class) in spans(&src, &p) {
            if class == TokenClass::Keyword {
                prop_assert!(p.keywords.contains(&src[s..e]));
                prop_assert!(s == 0 || !word(b[s - 1]));
                prop_assert!(e == b.len() || !word(b[e]));
            }
        }
    }
}

#[test]
fn examples_from_the_contract() {
    let java = LanguageProfile::java();
    use TokenClass::*;
    assert_eq!(spans("", &java), vec![]);
    assert_eq!(
        spans("int x;", &java),
        vec![(0, 3, Keyword), (3, 4, Whitespace), (4, 5, Identifier), (5, 6, Punctuation)]
    );
    assert_eq!(
        spans("// hi\nx", &java),
        vec![(0, 5, Comment), (5, 6, Whitespace), (6, 7, Identifier)]
    );
    for src in ["int x;", "// hi\nx"] {
        assert_eq!(spans(src, &java), lex_oracle(src, &java));
    }
}

#[test]
fn unterminated_literals_swallow_the_rest() {
    let java = LanguageProfile::java();
    assert_eq!(spans("a \"open", &java).last(), Some(&(2, 7, TokenClass::StringLiteral)));
    assert_eq!(spans("/* never", &java), vec![(0, 8, TokenClass::Comment)]);
    assert_eq!(spans("'\\", &java), vec![(0, 2, TokenClass::CharLiteral)]);
}
