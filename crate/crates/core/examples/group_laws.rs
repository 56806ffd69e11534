//! The T-account group: addition, inverses, the zero class and canonical
//! representatives.

use pacioli::{Amount, TAccount};

fn t(d: u64, c: u64) -> TAccount {
    TAccount::new(Amount::from(d), Amount::from(c))
}

fn main() {
    let a = t(5, 3);
    let b = t(2, 7);
    println!("{a} + {b} = {}", &a + &b);
    println!("inverse of {a} is {}", a.inverse());
    println!("{a} + {} = {} (a zero: {})", a.inverse(), &a + &a.inverse(), (&a + &a.inverse()).is_zero());

    // equivalence is cross-sum equality: 5 + 0 = 2 + 3
    println!("{a} ≡ {}: {}", t(2, 0), a.equivalent(&t(2, 0)));
    println!("reduce {a} = {}, balance {}", a.reduce(), a.balance());
    println!("reduce {b} = {}, balance {}", b.reduce(), b.balance());

    // every (x, x) is the same zero
    for x in [0, 1, 42] {
        println!("{} is zero: {}", t(x, x), t(x, x).is_zero());
    }

    // exact rationals throughout
    let third = TAccount::debit_of(Amount::ratio(1, 3));
    let sum: TAccount = [third.clone(), third.clone(), third].iter().sum();
    println!("three thirds: {sum}");
    println!("scaled by 2/5: {}", t(10, 5).scale(&Amount::ratio(2, 5)));
}
