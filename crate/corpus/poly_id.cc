(* Polymorphic identities at Type0 and at Prop. *)
Definition id : forall (A : Type0), A -> A := fun (A : Type0) (x : A) => x.

Definition pid : forall (a : Prop), a -> a := fun (a : Prop) (p : a) => p.

Definition P : Prop := forall (a : Prop), a -> a.

Definition pid_self : P := pid P (pid).

Check id Prop : Prop -> Prop.
Check id P : P -> P.
