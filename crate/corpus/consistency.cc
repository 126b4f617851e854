(* Candidate closed proofs of forall x:Prop, x. Every one is rejected. *)
Definition c1 : forall (x : Prop), x := fun (x : Prop) => x.

Definition c2 : forall (x : Prop), x := fun (x : Prop) => forall (y : Prop), y.

Definition c3 : forall (x : Prop), x := fun (x : Prop) => c3 x.

Definition c4 : forall (x : Prop), x :=
  fix f / 1 : forall (x : Prop), x := fun (x : Prop) => f x for f.

Definition c5 : forall (x : Prop), x := fun (x : Prop) (p : x) => p.

Definition c6 : forall (x : Prop), x := let y := Prop in fun (x : y) => x.
