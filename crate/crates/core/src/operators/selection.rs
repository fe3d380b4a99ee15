//! Tournament selection and single-elite replacement.

use crate::error::{Error, Result};
use crate::genome::{Genome, Population};
use crate::rng::RngStream;

pub(crate) fn check_pool(pool_size: usize, tournament_size: usize) -> Result<()> {
    if pool_size == 0 || !pool_size.is_multiple_of(2) {
        return Err(Error::config(format!(
            "pool size must be positive and even, got {pool_size}"
        )));
    }
    if tournament_size == 0 {
        return Err(Error::config("tournament size must be at least 1"));
    }
    Ok(())
}

/// One tournament: `size` uniform draws with replacement, lowest fitness
/// wins, ties go to the earliest draw.
#[inline]
pub(crate) fn tournament(fitness: &[f64], size: usize, rng: &mut RngStream) -> usize {
    let mut winner = rng.index(fitness.len());
    for _ in 1..size {
        let challenger = rng.index(fitness.len());
        if fitness[challenger] < fitness[winner] {
            winner = challenger;
        }
    }
    winner
}

pub(crate) fn tournament_indices_into(
    fitness: &[f64],
    tournament_size: usize,
    out: &mut [usize],
    rng: &mut RngStream,
) {
    for slot in out {
        *slot = tournament(fitness, tournament_size, rng);
    }
}

/// Fills a mating pool of `pool_size` copies chosen by independent
/// tournaments of `tournament_size`.
pub fn tournament_select(
    pop: &Population,
    pool_size: usize,
    tournament_size: usize,
    rng: &mut RngStream,
) -> Result<Vec<Genome>> {
    check_pool(pool_size, tournament_size)?;
    let fitness = pop
        .fitness()
        .ok_or_else(|| Error::usage("tournament selection requires evaluated fitness"))?;
    if fitness.is_empty() {
        return Err(Error::usage("tournament selection on an empty population"));
    }
    let mut idx = vec![0; pool_size];
    tournament_indices_into(fitness, tournament_size, &mut idx, rng);
    Ok(idx.into_iter().map(|i| pop.members()[i].clone()).collect())
}

/// Overwrites one uniformly chosen offspring with a copy of `elite`.
pub fn elitist_replacement(
    offspring: Vec<Genome>,
    elite: &Genome,
    rng: &mut RngStream,
) -> Result<Population> {
    if offspring.is_empty() {
        return Err(Error::usage(
            "elitist replacement needs at least one offspring",
        ));
    }
    let mut members = offspring;
    let slot = rng.index(members.len());
    members[slot].clone_from(elite);
    Ok(Population::new(members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pop(fitness: &[f64]) -> Population {
        let members = (0..fitness.len())
            .map(|i| Genome::new(vec![i as f64]))
            .collect();
        Population::with_fitness(members, fitness.to_vec()).unwrap()
    }

    #[test]
    fn odd_pool_is_config_error() {
        let p = pop(&[1.0, 2.0]);
        let mut rng = RngStream::new(0);
        assert!(matches!(
            tournament_select(&p, 3, 2, &mut rng),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            tournament_select(&p, 0, 2, &mut rng),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            tournament_select(&p, 2, 0, &mut rng),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn fitter_member_always_wins_when_both_drawn() {
        let fitness = [1.0, 5.0];
        let mut rng = RngStream::new(1);
        // Replaying the draws shows the weaker member wins only when it is
        // the sole contestant.
        for _ in 0..10_000 {
            let mut replay = rng.clone();
            let (a, b) = (replay.index(2), replay.index(2));
            let w = tournament(&fitness, 2, &mut rng);
            if a != b {
                assert_eq!(w, 0);
            } else {
                assert_eq!(w, a);
            }
        }
        let p = pop(&fitness);
        let pool = tournament_select(&p, 10_000, 2, &mut rng).unwrap();
        let weak = pool.iter().filter(|g| g[0] == 1.0).count() as f64 / 10_000.0;
        assert!((weak - 0.25).abs() < 0.015, "{weak}");
    }

    #[test]
    fn unit_tournament_is_uniform() {
        let p = pop(&[1.0, 2.0, 3.0, 4.0]);
        let mut rng = RngStream::new(2);
        let pool = tournament_select(&p, 40_000, 1, &mut rng).unwrap();
        for i in 0..4 {
            let f = pool.iter().filter(|g| g[0] == i as f64).count() as f64 / 40_000.0;
            assert!((f - 0.25).abs() < 0.0065, "member {i}: {f}");
        }
    }

    #[test]
    fn elitist_replacement_examples() {
        let elite = Genome::new(vec![9.0]);
        let mut rng = RngStream::new(3);
        let p = elitist_replacement(vec![Genome::new(vec![1.0])], &elite, &mut rng).unwrap();
        assert_eq!(p.members(), std::slice::from_ref(&elite));

        let offspring = vec![
            elite.clone(),
            Genome::new(vec![1.0]),
            Genome::new(vec![2.0]),
        ];
        let p = elitist_replacement(offspring, &elite, &mut rng).unwrap();
        assert_eq!(p.len(), 3);

        let offspring: Vec<Genome> = (0..400).map(|i| Genome::new(vec![i as f64])).collect();
        let p = elitist_replacement(offspring, &Genome::new(vec![-1.0]), &mut rng).unwrap();
        let survivors = p.members().iter().filter(|g| g[0] >= 0.0).count();
        assert_eq!(survivors, 399);

        assert!(matches!(
            elitist_replacement(vec![], &elite, &mut rng),
            Err(Error::Usage(_))
        ));
    }
}
