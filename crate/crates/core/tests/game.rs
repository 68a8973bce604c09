use relcyl::game::{play, GameConfig, Outcome, Strategy};
use relcyl::networks::NetMode;
use relcyl::setalg::{abstract_unit, SetClass, Unit};
use relcyl::{Dimension, FiniteBao};

fn square(n: usize, class: SetClass) -> FiniteBao {
    abstract_unit(&Unit::full(Dimension::new(n).unwrap(), 2).unwrap(), class).unwrap()
}

fn stats(a: &FiniteBao, cfg: GameConfig) -> (Outcome, usize, usize, usize) {
    let p = play(a, cfg).unwrap();
    (p.outcome.clone(), p.rounds.len(), p.m.nodes.len(), p.m.edges.len())
}

#[test]
fn pinned_square_plays() {
    let pta = GameConfig { mode: NetMode::Pta, ..GameConfig::default() };
    let tea = GameConfig { mode: NetMode::Tea, ..GameConfig::default() };
    let (o, r, v, e) = stats(&square(2, SetClass::Crs), pta.clone());
    assert!(o.is_saturated());
    assert_eq!((r, v, e), (9, 5, 12));
    let (o, r, v, e) = stats(&square(2, SetClass::Pers), tea.clone());
    assert!(o.is_saturated());
    assert_eq!((r, v, e), (5, 3, 7));
    for (class, cfg) in [(SetClass::Crs, pta), (SetClass::Pers, tea)] {
        let (o, r, v, e) = stats(&square(3, class), cfg);
        assert!(o.is_saturated());
        assert_eq!((r, v, e), (9, 3, 15));
    }
}

#[test]
fn fresh_witnesses_exhaust_the_node_budget() {
    let cfg = GameConfig { mode: NetMode::Pta, reuse: false, ..GameConfig::default() };
    let (o, r, v, _) = stats(&square(2, SetClass::Crs), cfg);
    assert_eq!(o, Outcome::BudgetExhausted { pending: 8 });
    assert_eq!((r, v), (510, 512));
    let cfg = GameConfig { mode: NetMode::Tea, reuse: false, ..GameConfig::default() };
    let (o, r, v, _) = stats(&square(2, SetClass::Pers), cfg);
    assert!(o.is_saturated());
    assert_eq!((r, v), (6, 8));
}

#[test]
fn faithful_strategy_builds_the_same_network() {
    for (class, mode) in [(SetClass::Crs, NetMode::Pta), (SetClass::Pers, NetMode::Tea)] {
        let a = square(2, class);
        let fast = play(&a, GameConfig { mode, ..GameConfig::default() }).unwrap();
        let faithful = play(&a, GameConfig { mode, strategy: Strategy::Faithful, ..GameConfig::default() }).unwrap();
        assert!(faithful.outcome.is_saturated());
        assert_eq!(fast.m, faithful.m);
    }
}

#[test]
fn plays_are_deterministic() {
    let a = square(2, SetClass::Crs);
    let one = play(&a, GameConfig::default()).unwrap().to_json();
    let two = play(&a, GameConfig::default()).unwrap().to_json();
    assert_eq!(one, two);
}
