(* Primitive recursion on naturals, and addition derived from it. *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint PRec / 4 : forall (A : Type0) (g : A) (h : nat -> A -> A) (n : nat), A :=
  fun (A : Type0) (g : A) (h : nat -> A -> A) (n : nat) =>
    match n return A with
    | O => g
    | S p => h p (PRec A g h p)
    end.

Definition add : nat -> nat -> nat :=
  fun (m n : nat) => PRec nat m (fun (_ : nat) (r : nat) => S r) n.

Assert add (S O) (S (S O)) = S (S (S O)) : nat.
