//! Relation composition against a boolean-matrix oracle, plus algebraic
//! properties of the knowledge-base queries.

use counsel_core::{
    EntityId, EntityKind, FiniteRelation, InstituteRecord, KnowledgeBase,
};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn entity(kind: EntityKind, prefix: &str, i: usize) -> EntityId {
    EntityId::new(kind, &format!("{prefix}{i}")).unwrap()
}

/// Builds a relation from a boolean adjacency matrix.
fn relation_from_matrix(
    source: (EntityKind, &str),
    target: (EntityKind, &str),
    matrix: &[Vec<bool>],
) -> FiniteRelation {
    let mut rel = FiniteRelation::new(source.0, target.0);
    for (i, row) in matrix.iter().enumerate() {
        for (j, &related) in row.iter().enumerate() {
            if related {
                rel.insert(entity(source.0, source.1, i), entity(target.0, target.1, j))
                    .unwrap();
            }
        }
    }
    rel
}

/// The oracle: a triple-nested-loop boolean matrix product.
fn oracle_compose(first: &[Vec<bool>], second: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let rows = first.len();
    let mid = second.len();
    let cols = second.first().map(Vec::len).unwrap_or(0);
    let mut out = vec![vec![false; cols]; rows];
    for a in 0..rows {
        for c in 0..cols {
            for (b, second_row) in second.iter().enumerate().take(mid) {
                if first[a][b] && second_row[c] {
                    out[a][c] = true;
                }
            }
        }
    }
    out
}

fn arb_matrix(rows: core::ops::RangeInclusive<usize>, cols: core::ops::RangeInclusive<usize>)
    -> impl Strategy<Value = Vec<Vec<bool>>>
{
    (rows, cols).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r))
}

proptest! {
    #[test]
    fn compose_matches_matrix_oracle(
        first in arb_matrix(1..=8, 1..=8),
        second_cols in 1..=8usize,
        seed in any::<u64>(),
    ) {
        let mid = first[0].len();
        // Derive the second matrix deterministically from the seed.
        let mut state = seed | 1;
        let mut second = vec![vec![false; second_cols]; mid];
        for row in &mut second {
            for cell in row.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *cell = state >> 63 == 1;
            }
        }

        let r = relation_from_matrix((EntityKind::Field, "f"), (EntityKind::Course, "c"), &first);
        let s = relation_from_matrix((EntityKind::Course, "c"), (EntityKind::Institute, "u"), &second);
        let composed = r.compose(&s).unwrap();
        let expected = oracle_compose(&first, &second);
        for (i, row) in expected.iter().enumerate() {
            for (j, &related) in row.iter().enumerate() {
                let a = entity(EntityKind::Field, "f", i);
                let b = entity(EntityKind::Institute, "u", j);
                prop_assert_eq!(composed.contains(&a, &b), related, "cell ({}, {})", i, j);
            }
        }
        prop_assert_eq!(composed.len(), expected.iter().flatten().filter(|&&x| x).count());
    }

    #[test]
    fn composition_is_associative(
        p in arb_matrix(1..=6, 1..=6),
        q_cols in 1..=6usize,
        w_cols in 1..=6usize,
        seed in any::<u64>(),
    ) {
        let mut state = seed | 1;
        let mut fill = |rows: usize, cols: usize| {
            let mut m = vec![vec![false; cols]; rows];
            for row in &mut m {
                for cell in row.iter_mut() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    *cell = state >> 63 == 1;
                }
            }
            m
        };
        let q = fill(p[0].len(), q_cols);
        let w = fill(q_cols, w_cols);

        let rp = relation_from_matrix((EntityKind::Field, "f"), (EntityKind::Course, "c"), &p);
        let rq = relation_from_matrix((EntityKind::Course, "c"), (EntityKind::Institute, "u"), &q);
        let rw = relation_from_matrix((EntityKind::Institute, "u"), (EntityKind::Job, "j"), &w);

        let left = rp.compose(&rq).unwrap().compose(&rw).unwrap();
        let right = rp.compose(&rq.compose(&rw).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn image_of_composition_is_union_of_images(
        first in arb_matrix(1..=6, 1..=6),
        second_cols in 1..=6usize,
        seed in any::<u64>(),
    ) {
        let mid = first[0].len();
        let mut state = seed | 1;
        let mut second = vec![vec![false; second_cols]; mid];
        for row in &mut second {
            for cell in row.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *cell = state >> 63 == 1;
            }
        }
        let r = relation_from_matrix((EntityKind::Field, "f"), (EntityKind::Course, "c"), &first);
        let s = relation_from_matrix((EntityKind::Course, "c"), (EntityKind::Institute, "u"), &second);
        let composed = r.compose(&s).unwrap();

        for i in 0..first.len() {
            let f = entity(EntityKind::Field, "f", i);
            let direct = composed.image(&f).unwrap();
            let mut union: BTreeSet<EntityId> = BTreeSet::new();
            for course in r.image(&f).unwrap() {
                union.extend(s.image(&course).unwrap());
            }
            prop_assert_eq!(&direct, &union, "field {}", i);
        }
    }

    #[test]
    fn adding_pairs_never_shrinks_recommendations(
        matrix in arb_matrix(2..=5, 2..=5),
        extra_row in 0..5usize,
        extra_col in 0..5usize,
    ) {
        let fields: Vec<EntityId> = (0..matrix.len()).map(|i| entity(EntityKind::Field, "f", i)).collect();
        let courses: Vec<EntityId> = (0..matrix[0].len()).map(|j| entity(EntityKind::Course, "c", j)).collect();
        let institutes: Vec<InstituteRecord> = (0..matrix[0].len())
            .map(|j| InstituteRecord::new(&format!("u{j}"), Some("here")).unwrap())
            .collect();
        // Every course is offered by the matching institute and leads to one job.
        let jobs: Vec<EntityId> = (0..matrix[0].len()).map(|j| entity(EntityKind::Job, "j", j)).collect();
        let s = FiniteRelation::from_pairs(
            EntityKind::Course,
            EntityKind::Institute,
            courses.iter().enumerate().map(|(j, c)| (c.clone(), entity(EntityKind::Institute, "u", j))),
        ).unwrap();
        let t = FiniteRelation::from_pairs(
            EntityKind::Course,
            EntityKind::Job,
            courses.iter().enumerate().map(|(j, c)| (c.clone(), entity(EntityKind::Job, "j", j))),
        ).unwrap();

        let r = relation_from_matrix((EntityKind::Field, "f"), (EntityKind::Course, "c"), &matrix);
        let mut grown_matrix = matrix.clone();
        let row = extra_row % matrix.len();
        let col = extra_col % matrix[0].len();
        grown_matrix[row][col] = true;
        let r_grown = relation_from_matrix((EntityKind::Field, "f"), (EntityKind::Course, "c"), &grown_matrix);

        let kb = KnowledgeBase::from_parts(
            fields.clone(), courses.clone(), jobs.clone(), institutes.clone(), r, s.clone(), t.clone(),
        ).unwrap();
        let kb_grown = KnowledgeBase::from_parts(
            fields.clone(), courses, jobs, institutes, r_grown, s, t,
        ).unwrap();

        for field in &fields {
            let before = kb.recommend(field.name(), None).unwrap();
            let after = kb_grown.recommend(field.name(), None).unwrap();
            prop_assert!(before.courses().is_subset(after.courses()));
            prop_assert!(before.institutes().is_subset(after.institutes()));
            prop_assert!(before.jobs().is_subset(after.jobs()));
        }
    }

    #[test]
    fn queries_are_deterministic(
        matrix in arb_matrix(1..=5, 1..=5),
    ) {
        let r = relation_from_matrix((EntityKind::Field, "f"), (EntityKind::Course, "c"), &matrix);
        let f = entity(EntityKind::Field, "f", 0);
        let once = r.image(&f).unwrap();
        let twice = r.image(&f).unwrap();
        prop_assert_eq!(&once, &twice);
        let names: Vec<&str> = once.iter().map(reference_name).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        prop_assert_eq!(names, sorted);
    }
}

fn reference_name(id: &EntityId) -> &str {
    id.name()
}
