(* Mutually inductive trees and forests, and their sizes. *)
Inductive nat : Type0 := O : nat | S : nat -> nat.

Fixpoint plus / 2 : nat -> nat -> nat :=
  fun (m n : nat) =>
    match n return nat with
    | O => m
    | S p => S (plus m p)
    end.

Inductive tree (A : Type0) : Type0 :=
  | node : A -> forest A -> tree A
with forest (A : Type0) : Type0 :=
  | emptyf : forest A
  | consf : tree A -> forest A -> forest A.

Fixpoint Tsize / 2 : forall (A : Type0), tree A -> nat :=
  fun (A : Type0) (t : tree A) =>
    match t return nat with
    | node a f => S (Fsize A f)
    end
with Fsize / 2 : forall (A : Type0), forest A -> nat :=
  fun (A : Type0) (f : forest A) =>
    match f return nat with
    | emptyf => O
    | consf t g => plus (Tsize A t) (Fsize A g)
    end.

Definition leaf : tree nat := node nat O (emptyf nat).
Definition pair : tree nat := node nat (S O) (consf nat leaf (consf nat leaf (emptyf nat))).

Assert Tsize nat pair = S (S (S O)) : nat.
