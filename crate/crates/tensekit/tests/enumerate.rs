use tensekit::enumerate::{canonical_code, codes, frames, isomorphic};
use tensekit::Frame;

#[test]
fn counts_match_known_digraph_sequence() {
    // Digraphs with loops allowed, counted up to isomorphism.
    assert_eq!(codes(1).len(), 2);
    assert_eq!(codes(2).len(), 10);
    assert_eq!(codes(3).len(), 104);
    assert_eq!(codes(4).len(), 3044);
    assert_eq!(codes(5).len(), 291_968);
}

#[test]
fn representatives_are_pairwise_non_isomorphic() {
    let mut seen = std::collections::HashSet::new();
    for f in frames(3) {
        assert!(seen.insert(canonical_code(&f)));
    }
}

#[test]
fn isomorphism_ignores_labels() {
    let a = Frame::numbered(3, &[(0, 1), (1, 2)]);
    let b = Frame::numbered(3, &[(2, 0), (1, 2)]);
    assert!(isomorphic(&a, &b));
    assert!(!isomorphic(&a, &Frame::numbered(3, &[(0, 1), (0, 2)])));
}
